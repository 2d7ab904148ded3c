#include "logqp/path.hpp"

#include <cmath>
#include <limits>

namespace logqp {

double q(double t) {
  // 4 sinh²(t/2) == 2(cosh t − 1) without cancellation near 0.
  const double s = std::sinh(0.5 * t);
  return 4.0 * s * s;
}

double q_inverse(double y) {
  if (y < 0.0) {
    throw std::invalid_argument("q_inverse: argument must be nonnegative");
  }
  // arccosh(1 + y/2) = 2 asinh(√y / 2); the asinh form stays accurate for
  // small y.
  return 2.0 * std::asinh(0.5 * std::sqrt(y));
}

Eigen::VectorXd DirectionDecomposition::direction(double mu) const {
  return d0 + d1 / std::sqrt(mu);
}

NewtonStep DirectionDecomposition::reconstruct(double mu) const {
  NewtonStep step;
  step.d = direction(mu);
  step.x = std::sqrt(mu) * x_sqrt - x_const;
  step.factorization = factorization;
  step.mu = mu;
  step.v = v;
  return step;
}

DirectionDecomposition decompose_direction(const QPInstance& qp,
                                           const Eigen::VectorXd& v,
                                           double mu1, double mu2) {
  if (!(mu1 > 0.0) || !(mu2 > 0.0)) {
    throw std::invalid_argument("decompose_direction: probes must be positive");
  }
  if (mu1 == mu2) {
    throw std::invalid_argument("decompose_direction: probes must differ");
  }

  NewtonStep s1 = newton_direction(qp, v, mu1);
  NewtonStep s2 = newton_direction(qp, v, mu2, s1.factorization);

  const double k1 = 1.0 / std::sqrt(mu1);
  const double k2 = 1.0 / std::sqrt(mu2);
  const double c1 = 1.0 / (k1 - k2);
  const double c0 = -k2 * c1;

  DirectionDecomposition dd;
  dd.d1 = c1 * (s1.d - s2.d);
  dd.d0 = c0 * s1.d + (1.0 - c0) * s2.d;
  dd.v = v;
  // x(μ) = √μ·x_sqrt − x_const, from the two sampled points.
  dd.x_sqrt = (s1.x - s2.x) / (std::sqrt(mu1) - std::sqrt(mu2));
  dd.x_const = std::sqrt(mu1) * dd.x_sqrt - s1.x;
  dd.factorization = s1.factorization;
  return dd;
}

MuInfimum min_mu_feasible(const DirectionDecomposition& dd) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  double t_lo = 0.0;
  double t_hi = kInf;

  for (Eigen::Index i = 0; i < dd.d0.size(); ++i) {
    const double a = dd.d0[i];
    const double s = dd.d1[i];
    if (s == 0.0) {
      if (std::abs(a) > 1.0) {
        return {MuInfimumKind::NoFeasibleMu};
      }
      continue;
    }
    // −1 ≤ a + t·s ≤ 1
    const double bound1 = (1.0 - a) / s;
    const double bound2 = (-1.0 - a) / s;
    t_lo = std::max(t_lo, std::min(bound1, bound2));
    t_hi = std::min(t_hi, std::max(bound1, bound2));
  }

  if (t_hi == kInf) {
    return {MuInfimumKind::AllMuFeasible};
  }
  if (!(t_hi > 0.0) || t_lo > t_hi) {
    return {MuInfimumKind::NoFeasibleMu};
  }
  const double mu_star = 1.0 / (t_hi * t_hi);
  if (mu_star == 0.0) {  // t_hi large enough to underflow μ
    return {MuInfimumKind::AllMuFeasible};
  }
  return {MuInfimumKind::Finite, mu_star};
}

std::optional<double> least_squares_mu(const DirectionDecomposition& dd) {
  const double cross = dd.d0.dot(dd.d1);
  const double d1_sq = dd.d1.squaredNorm();
  if (!(cross < 0.0) || d1_sq == 0.0) {
    return std::nullopt;
  }
  const double sqrt_mu = d1_sq / (-cross);
  return sqrt_mu * sqrt_mu;
}

ShortstepParams select_shortstep_params(double theta, double epsilon,
                                        Eigen::Index m) {
  if (!(theta > 0.0 && theta <= 0.5)) {
    throw std::invalid_argument(
        "select_shortstep_params: theta must lie in (0, 1/2]");
  }
  const double qinv_theta = q_inverse(theta);
  if (!(epsilon > 0.0 && epsilon < qinv_theta)) {
    throw std::invalid_argument(
        "select_shortstep_params: epsilon must lie in (0, q_inverse(theta))");
  }
  if (m <= 0) {
    throw std::invalid_argument("select_shortstep_params: m must be positive");
  }

  ShortstepParams p;
  p.theta = theta;
  p.epsilon = epsilon;
  p.zeta = qinv_theta - epsilon;

  const double eps_sq = epsilon * epsilon;
  // Smallest positive N with θ^(2^N) ≤ ε²; evaluated in the log domain so
  // the inner power cannot underflow.
  int N = 1;
  while (std::exp2(N) * std::log(theta) > std::log(eps_sq)) {
    ++N;
    if (N > 60) {
      throw numerical_error("select_shortstep_params: N out of range");
    }
  }
  p.N = N;

  p.k = std::exp(2.0 * q_inverse(p.zeta * p.zeta / static_cast<double>(m)));
  p.c_rate = 2.0 * q_inverse(p.zeta * p.zeta);
  return p;
}

long shortstep_step_bound(const ShortstepParams& params, Eigen::Index m,
                          double mu0, double mu_f) {
  if (!(mu0 > 0.0) || !(mu_f > 0.0)) {
    throw std::invalid_argument("shortstep_step_bound: mu values must be "
                                "positive");
  }
  if (mu0 <= mu_f) {
    return 0;
  }
  const double outer = std::ceil(std::sqrt(static_cast<double>(m)) /
                                 params.c_rate * std::log(mu0 / mu_f));
  return static_cast<long>(params.N) * static_cast<long>(outer);
}

}  // namespace logqp
