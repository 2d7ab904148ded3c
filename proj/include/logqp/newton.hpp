#pragma once

#include <memory>

#include "logqp/core.hpp"

namespace logqp {

/// Newton direction for the log-domain central-path equations
///
///   √μ Aᵀeᵛ = Wx + c,   √μ e⁻ᵛ = Ax + b,
///
/// linearized at v. The associated primal point x is the unique solution of
///
///   (AᵀQ(v)A + W) x = 2√μ Aᵀeᵛ − (c + AᵀQ(v)b),   Q(v) = diag(e^{2v}),
///
/// and d = 𝟏 − (1/√μ) eᵛ ∘ (Ax + b). The factorization handle covers
/// AᵀQ(v)A + W and can be reused for further solves at the same v.
struct NewtonStep {
  Eigen::VectorXd d;
  Eigen::VectorXd x;
  std::shared_ptr<const SpdFactorization> factorization;
  double mu = 0.0;
  Eigen::VectorXd v;  ///< expansion point
};

/// Computes the Newton direction and associated point at (v, μ).
///
/// Entries of 2v are required to stay inside [−700, 700]; beyond that e^{2v}
/// leaves double range and the iterate is reported as a numerical_error
/// instead of silently saturating. Factorization failure also raises
/// numerical_error (a violated regularity assumption).
NewtonStep newton_direction(const QPInstance& qp, const Eigen::VectorXd& v,
                            double mu);

/// Same, but reuses an existing factorization of AᵀQ(v)A + W taken at the
/// same v. Only the right-hand side depends on μ, so re-solves at new μ cost
/// one pair of triangular solves.
NewtonStep newton_direction(const QPInstance& qp, const Eigen::VectorXd& v,
                            double mu,
                            std::shared_ptr<const SpdFactorization> fact);

/// Divergence h(u, v) = ⟨eᵘ, e⁻ᵛ⟩ + ⟨e⁻ᵘ, eᵛ⟩ − 2m.
///
/// Symmetric, nonnegative, zero iff u == v; not a metric. Evaluated as
/// Σᵢ 4 sinh²((uᵢ−vᵢ)/2), which is exact for nearby arguments and immune to
/// overflow when u and v share large entries.
double divergence(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// Step-size rule α = max(1, ‖d‖∞² / (2β)); steps are taken as v + α⁻¹d.
double step_size(const Eigen::VectorXd& d, double beta);

/// Damped Newton iteration at fixed μ until ‖d(v, μ)‖∞ ≤ d_tol. Converges to
/// the centered point v̂(μ) from any start; also serves as the numerical
/// oracle for v̂(μ). Throws numerical_error if max_iter is exhausted (the
/// cap is an engineering guard, not a convergence bound).
Eigen::VectorXd center(const QPInstance& qp, const Eigen::VectorXd& v0,
                       double mu, double d_tol = 1e-10, double beta = 0.5,
                       int max_iter = 500);

struct LogDomainResidual {
  double dual;    ///< ‖√μ Aᵀeᵛ − Wx − c‖∞
  double primal;  ///< ‖√μ e⁻ᵛ − Ax − b‖∞
};

/// Residuals of the log-domain central-path equations at (v, x, μ).
LogDomainResidual logdomain_residual(const QPInstance& qp,
                                     const Eigen::VectorXd& v,
                                     const Eigen::VectorXd& x, double mu);

}  // namespace logqp
