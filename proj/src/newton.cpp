#include "logqp/newton.hpp"

#include <cmath>

namespace logqp {

namespace {

// e^{±700} brackets double range; an iterate past this cannot be represented.
constexpr double kExpArgLimit = 700.0;

void check_exp_range(const Eigen::VectorXd& v) {
  if (!v.allFinite()) {
    throw numerical_error("newton_direction: v has non-finite entries");
  }
  if ((2.0 * v).cwiseAbs().maxCoeff() > kExpArgLimit) {
    throw numerical_error(
        "newton_direction: |2v| exceeds the exp() range guard");
  }
}

}  // namespace

NewtonStep newton_direction(const QPInstance& qp, const Eigen::VectorXd& v,
                            double mu) {
  if (v.size() != qp.m()) {
    throw std::invalid_argument("newton_direction: v has wrong length");
  }
  check_exp_range(v);

  // AᵀQ(v)A + W as BᵀB + W with B = diag(eᵛ)A.
  const Eigen::ArrayXd w = v.array().exp();
  Eigen::MatrixXd B = w.matrix().asDiagonal() * qp.A;
  Eigen::MatrixXd M = qp.W;
  M.selfadjointView<Eigen::Lower>().rankUpdate(B.transpose());

  auto fact = std::make_shared<const SpdFactorization>(
      SpdFactorization::compute(M));
  return newton_direction(qp, v, mu, std::move(fact));
}

NewtonStep newton_direction(const QPInstance& qp, const Eigen::VectorXd& v,
                            double mu,
                            std::shared_ptr<const SpdFactorization> fact) {
  if (mu <= 0.0) {
    throw std::invalid_argument("newton_direction: mu must be positive");
  }
  if (v.size() != qp.m()) {
    throw std::invalid_argument("newton_direction: v has wrong length");
  }
  if (!fact || fact->size() != qp.n()) {
    throw std::invalid_argument("newton_direction: factorization size "
                                "does not match the instance");
  }
  check_exp_range(v);

  const double sqrt_mu = std::sqrt(mu);
  const Eigen::ArrayXd w = v.array().exp();

  // f = 2√μ Aᵀeᵛ − c − AᵀQ(v)b, with AᵀQ(v)b = Aᵀ(e^{2v} ∘ b).
  Eigen::VectorXd f =
      2.0 * sqrt_mu * (qp.A.transpose() * w.matrix()) - qp.c -
      qp.A.transpose() * (w.square() * qp.b.array()).matrix();

  NewtonStep step;
  step.x = fact->solve(f);
  step.d = Eigen::VectorXd::Ones(qp.m()) -
           (w * (qp.A * step.x + qp.b).array() / sqrt_mu).matrix();
  step.factorization = std::move(fact);
  step.mu = mu;
  step.v = v;
  return step;
}

double divergence(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("divergence: length mismatch");
  }
  if (!u.allFinite() || !v.allFinite()) {
    throw std::invalid_argument("divergence: non-finite input");
  }
  // h(u, v) = Σ 2(cosh(uᵢ−vᵢ) − 1) = Σ 4 sinh²((uᵢ−vᵢ)/2) ≥ 0.
  const double h = (0.5 * (u - v).array()).sinh().square().sum() * 4.0;
  return h < 0.0 ? 0.0 : h;
}

double step_size(const Eigen::VectorXd& d, double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw std::invalid_argument("step_size: beta must lie in (0, 1)");
  }
  const double d_inf = d.size() > 0 ? d.cwiseAbs().maxCoeff() : 0.0;
  return std::max(1.0, d_inf * d_inf / (2.0 * beta));
}

Eigen::VectorXd center(const QPInstance& qp, const Eigen::VectorXd& v0,
                       double mu, double d_tol, double beta, int max_iter) {
  if (!(d_tol > 0.0)) {
    throw std::invalid_argument("center: d_tol must be positive");
  }
  if (!(mu > 0.0)) {
    throw std::invalid_argument("center: mu must be positive");
  }

  Eigen::VectorXd v = v0;
  for (int iter = 0; iter <= max_iter; ++iter) {
    NewtonStep step = newton_direction(qp, v, mu);
    if (step.d.cwiseAbs().maxCoeff() <= d_tol) {
      return v;
    }
    if (iter == max_iter) {
      break;
    }
    v += step.d / step_size(step.d, beta);
  }
  throw numerical_error("center: no convergence within " +
                        std::to_string(max_iter) + " iterations");
}

LogDomainResidual logdomain_residual(const QPInstance& qp,
                                     const Eigen::VectorXd& v,
                                     const Eigen::VectorXd& x, double mu) {
  if (v.size() != qp.m() || x.size() != qp.n()) {
    throw std::invalid_argument("logdomain_residual: shape mismatch");
  }
  const double sqrt_mu = std::sqrt(mu);
  const Eigen::ArrayXd w = v.array().exp();
  const double dual =
      (sqrt_mu * (qp.A.transpose() * w.matrix()) - qp.W * x - qp.c)
          .cwiseAbs()
          .maxCoeff();
  const double primal =
      (sqrt_mu * w.inverse().matrix() - qp.A * x - qp.b).cwiseAbs().maxCoeff();
  return {dual, primal};
}

}  // namespace logqp
