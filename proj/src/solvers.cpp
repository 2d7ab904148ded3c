#include "logqp/solvers.hpp"

#include <cmath>

namespace logqp {

namespace {

double inf_norm(const Eigen::VectorXd& x) {
  return x.size() > 0 ? x.cwiseAbs().maxCoeff() : 0.0;
}

enum class VUpdate { LogDomain, Primal, Dual };

Eigen::VectorXd apply_update(VUpdate kind, const Eigen::VectorXd& v,
                             const Eigen::VectorXd& d, double alpha) {
  switch (kind) {
    case VUpdate::LogDomain:
      return v + d / alpha;
    case VUpdate::Primal:
      return primal_barrier_step(v, d, alpha);
    case VUpdate::Dual:
      return dual_barrier_step(v, d, alpha);
  }
  throw std::logic_error("apply_update: bad kind");
}

SolveReport fill_failure(SolveReport rep, SolveStatus status,
                         std::string message, const Eigen::VectorXd& v,
                         double mu) {
  rep.status = status;
  rep.message = std::move(message);
  rep.v = v;
  rep.final_mu = mu;
  return rep;
}

// Shared driver for longstep and its barrier variants. `box` is the μ-rule
// bound on ‖d‖∞ (1 for log-domain, 1−ε for barriers).
SolveReport path_follow(const QPInstance& qp, const Eigen::VectorXd& v0,
                        double mu0, const SolverConfig& cfg, VUpdate kind,
                        double box) {
  cfg.check();
  if (v0.size() != qp.m()) {
    throw std::invalid_argument("longstep: v0 has wrong length");
  }
  if (!(mu0 > cfg.mu_f)) {
    throw std::invalid_argument("longstep: requires mu0 > mu_f > 0");
  }

  SolveReport rep;
  Iterate it{v0, mu0};

  try {
    it.check();
    for (;;) {
      DirectionDecomposition dd =
          decompose_direction(qp, it.v, it.mu, 0.25 * it.mu);
      Eigen::VectorXd d = dd.direction(it.mu);

      if (it.mu <= cfg.mu_f && inf_norm(d) <= box) {
        NewtonStep final_step =
            newton_direction(qp, it.v, it.mu, dd.factorization);
        auto rec = recover_solution(qp, final_step);
        if (!rec) {
          return fill_failure(std::move(rep), SolveStatus::NumericalFailure,
                              "terminal direction left the unit box", it.v,
                              it.mu);
        }
        rep.status = SolveStatus::Solved;
        rep.x = std::move(rec->x);
        rep.s = std::move(rec->s);
        rep.lambda = std::move(rec->lambda);
        rep.gap = rec->gap;
        rep.v = it.v;
        rep.d = std::move(final_step.d);
        rep.final_mu = it.mu;
        return rep;
      }

      if (rep.newton_steps >= cfg.max_newton_steps) {
        return fill_failure(std::move(rep), SolveStatus::IterationLimit,
                            "max_newton_steps reached", it.v, it.mu);
      }

      MuInfimum mu_inf;
      if (box == 1.0) {
        mu_inf = min_mu_feasible(dd);
      } else {
        DirectionDecomposition scaled = dd;
        scaled.d0 /= box;
        scaled.d1 /= box;
        mu_inf = min_mu_feasible(scaled);
      }
      switch (mu_inf.kind) {
        case MuInfimumKind::Finite:
          it.mu = std::min(it.mu, mu_inf.mu);
          break;
        case MuInfimumKind::AllMuFeasible:
          // Every μ admits ‖d‖∞ ≤ box; jump straight to the target.
          it.mu = std::min(it.mu, cfg.mu_f);
          break;
        case MuInfimumKind::NoFeasibleMu:
          // inf ∅ = +∞: keep the current μ and let the damped step recenter.
          break;
      }

      d = dd.direction(it.mu);
      const double alpha = step_size(d, cfg.beta);
      rep.trace.push_back(
          {it.mu, inf_norm(d),
           it.mu * (static_cast<double>(qp.m()) - d.squaredNorm())});
      it.v = apply_update(kind, it.v, d, alpha);
      it.check();
      ++rep.newton_steps;
    }
  } catch (const numerical_error& e) {
    return fill_failure(std::move(rep), SolveStatus::NumericalFailure,
                        e.what(), it.v, it.mu);
  }
}

}  // namespace

const char* to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::LogDomainLong:
      return "longstep";
    case Algorithm::LogDomainShort:
      return "shortstep";
    case Algorithm::PrimalBarrier:
      return "primal-barrier";
    case Algorithm::DualBarrier:
      return "dual-barrier";
  }
  return "unknown";
}

void SolverConfig::check() const {
  if (!(beta >= 0.5 && beta < 1.0)) {
    throw std::invalid_argument("SolverConfig: beta must lie in [1/2, 1)");
  }
  if (!(mu_f > 0.0)) {
    throw std::invalid_argument("SolverConfig: mu_f must be positive");
  }
  if (max_newton_steps <= 0) {
    throw std::invalid_argument("SolverConfig: max_newton_steps must be "
                                "positive");
  }
  if (!(barrier_eps > 0.0 && barrier_eps < 1.0)) {
    throw std::invalid_argument("SolverConfig: barrier_eps must lie in (0,1)");
  }
  if (!(d_tol_center > 0.0)) {
    throw std::invalid_argument("SolverConfig: d_tol_center must be positive");
  }
  if (center_max_iter <= 0) {
    throw std::invalid_argument("SolverConfig: center_max_iter must be "
                                "positive");
  }
}

std::optional<Recovered> recover_solution(const QPInstance& qp,
                                          const NewtonStep& step) {
  const double d_inf = inf_norm(step.d);
  if (d_inf > 1.0) {
    return std::nullopt;
  }

  const double sqrt_mu = std::sqrt(step.mu);
  const Eigen::ArrayXd w = step.v.array().exp();
  const Eigen::ArrayXd d = step.d.array();

  Recovered rec;
  rec.x = step.x;
  rec.lambda = (sqrt_mu * w * (1.0 + d)).matrix();
  rec.s = (sqrt_mu / w * (1.0 - d)).matrix();

  if (rec.s.minCoeff() < 0.0 || rec.lambda.minCoeff() < 0.0) {
    throw numerical_error("recover_solution: negative slack or multiplier");
  }
  const double primal_res = inf_norm(qp.A * rec.x + qp.b - rec.s);
  const double dual_res =
      inf_norm(qp.A.transpose() * rec.lambda - qp.W * rec.x - qp.c);
  if (primal_res > SolverConfig::kEqualityResidual ||
      dual_res > SolverConfig::kEqualityResidual) {
    throw numerical_error("recover_solution: equality residual too large (" +
                          std::to_string(primal_res) + ", " +
                          std::to_string(dual_res) + ")");
  }

  rec.gap = rec.s.dot(rec.lambda);
  const double expected =
      step.mu * (static_cast<double>(qp.m()) - step.d.squaredNorm());
  if (std::abs(rec.gap - expected) >
      SolverConfig::kGapIdentity * (1.0 + rec.gap)) {
    throw numerical_error("recover_solution: gap identity violated");
  }
  return rec;
}

SolveReport longstep(const QPInstance& qp, const Eigen::VectorXd& v0,
                     double mu0, const SolverConfig& cfg) {
  return path_follow(qp, v0, mu0, cfg, VUpdate::LogDomain, 1.0);
}

SolveReport shortstep(const QPInstance& qp, const Eigen::VectorXd& v0,
                      double mu0, const SolverConfig& cfg,
                      const ShortstepParams& params,
                      const OuterObserver& observer) {
  cfg.check();
  if (v0.size() != qp.m()) {
    throw std::invalid_argument("shortstep: v0 has wrong length");
  }
  if (!(mu0 > 0.0)) {
    throw std::invalid_argument("shortstep: mu0 must be positive");
  }

  SolveReport rep;
  Iterate it{v0, mu0};

  try {
    it.v = center(qp, v0, mu0, cfg.d_tol_center, cfg.beta,
                  cfg.center_max_iter);
    it.check();

    while (it.mu > cfg.mu_f) {
      it.mu /= params.k;
      if (observer) {
        observer(it.v, it.mu);
      }
      for (int i = 0; i < params.N; ++i) {
        if (rep.newton_steps >= cfg.max_newton_steps) {
          return fill_failure(std::move(rep), SolveStatus::IterationLimit,
                              "max_newton_steps reached", it.v, it.mu);
        }
        NewtonStep step = newton_direction(qp, it.v, it.mu);
        rep.trace.push_back(
            {it.mu, inf_norm(step.d),
             it.mu * (static_cast<double>(qp.m()) - step.d.squaredNorm())});
        it.v += step.d;  // full Newton step
        it.check();
        ++rep.newton_steps;
      }
    }

    NewtonStep final_step = newton_direction(qp, it.v, it.mu);
    auto rec = recover_solution(qp, final_step);
    if (!rec) {
      return fill_failure(std::move(rep), SolveStatus::NumericalFailure,
                          "terminal direction left the unit box", it.v,
                          it.mu);
    }
    rep.status = SolveStatus::Solved;
    rep.x = std::move(rec->x);
    rep.s = std::move(rec->s);
    rep.lambda = std::move(rec->lambda);
    rep.gap = rec->gap;
    rep.v = it.v;
    rep.d = std::move(final_step.d);
    rep.final_mu = it.mu;
    return rep;
  } catch (const numerical_error& e) {
    return fill_failure(std::move(rep), SolveStatus::NumericalFailure,
                        e.what(), it.v, it.mu);
  }
}

Eigen::VectorXd primal_barrier_step(const Eigen::VectorXd& v,
                                    const Eigen::VectorXd& d, double alpha) {
  if (v.size() != d.size()) {
    throw std::invalid_argument("primal_barrier_step: length mismatch");
  }
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double step = d[i] / alpha;
    if (!(1.0 - step > 0.0)) {
      throw numerical_error(
          "primal_barrier_step: nonpositive log argument at component " +
          std::to_string(i));
    }
    // −log(e^{−v}(1 − step)) = v − log1p(−step)
    out[i] = v[i] - std::log1p(-step);
  }
  return out;
}

Eigen::VectorXd dual_barrier_step(const Eigen::VectorXd& v,
                                  const Eigen::VectorXd& d, double alpha) {
  if (v.size() != d.size()) {
    throw std::invalid_argument("dual_barrier_step: length mismatch");
  }
  Eigen::VectorXd out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double step = d[i] / alpha;
    if (!(1.0 + step > 0.0)) {
      throw numerical_error(
          "dual_barrier_step: nonpositive log argument at component " +
          std::to_string(i));
    }
    out[i] = v[i] + std::log1p(step);
  }
  return out;
}

SolveReport barrier_longstep(const QPInstance& qp, const Eigen::VectorXd& v0,
                             double mu0, const SolverConfig& cfg) {
  if (cfg.algorithm != Algorithm::PrimalBarrier &&
      cfg.algorithm != Algorithm::DualBarrier) {
    throw std::invalid_argument(
        "barrier_longstep: cfg.algorithm must be a barrier variant");
  }
  const VUpdate kind = cfg.algorithm == Algorithm::PrimalBarrier
                           ? VUpdate::Primal
                           : VUpdate::Dual;
  return path_follow(qp, v0, mu0, cfg, kind, 1.0 - cfg.barrier_eps);
}

SolveReport solve(const QPInstance& qp, const Eigen::VectorXd& v0, double mu0,
                  const SolverConfig& cfg,
                  const std::optional<ShortstepParams>& params) {
  switch (cfg.algorithm) {
    case Algorithm::LogDomainLong:
      return longstep(qp, v0, mu0, cfg);
    case Algorithm::LogDomainShort:
      return shortstep(qp, v0, mu0, cfg,
                       params ? *params
                              : select_shortstep_params(0.5, 0.25, qp.m()));
    case Algorithm::PrimalBarrier:
    case Algorithm::DualBarrier:
      return barrier_longstep(qp, v0, mu0, cfg);
  }
  throw std::logic_error("solve: bad algorithm");
}

}  // namespace logqp
