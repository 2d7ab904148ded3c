#pragma once

#include <memory>
#include <optional>

#include "logqp/core.hpp"
#include "logqp/newton.hpp"

namespace logqp {

/// q(t) = 2(cosh t − 1), the even convex function linking Euclidean distance
/// and divergence. q(t) = Σ of one divergence component at offset t.
double q(double t);

/// Nonnegative inverse of q: q_inverse(y) = arccosh(1 + y/2) for y ≥ 0.
/// Throws std::invalid_argument for y < 0.
double q_inverse(double y);

/// Affine decomposition of the Newton direction in 1/√μ at a fixed v:
///
///   d(v, μ) = d0 + μ^{−1/2} d1   for every μ > 0,
///
/// built from two directions at distinct probe values. The associated point
/// is affine in √μ, x(v, μ) = √μ·x_sqrt − x_const, so a full NewtonStep can
/// be reconstructed at any μ without another factorization.
struct DirectionDecomposition {
  Eigen::VectorXd d0;
  Eigen::VectorXd d1;
  Eigen::VectorXd v;  ///< expansion point
  Eigen::VectorXd x_sqrt;
  Eigen::VectorXd x_const;
  std::shared_ptr<const SpdFactorization> factorization;

  /// d(v, μ) = d0 + μ^{−1/2} d1.
  Eigen::VectorXd direction(double mu) const;

  /// Full step (d, x, factorization) at μ.
  NewtonStep reconstruct(double mu) const;
};

/// Builds the decomposition from d(v, μ₁) and d(v, μ₂), both solved against
/// one factorization of AᵀQ(v)A + W. With kᵢ = μᵢ^{−1/2}:
///
///   d1 = c₁(d̂₁ − d̂₂),  d0 = c₀ d̂₁ + (1 − c₀) d̂₂,
///   c₁ = (k₁ − k₂)⁻¹,  c₀ = −k₂ (k₁ − k₂)⁻¹.
///
/// Callers that have no preference should probe μ₂ = μ₁/4; the well-separated
/// k values keep c₁ small. Throws std::invalid_argument when μ₁ == μ₂.
DirectionDecomposition decompose_direction(const QPInstance& qp,
                                           const Eigen::VectorXd& v,
                                           double mu1, double mu2);

enum class MuInfimumKind {
  Finite,         ///< the infimum is attained at mu
  NoFeasibleMu,   ///< no μ > 0 satisfies ‖d(μ)‖∞ ≤ 1; treat the inf as +∞
  AllMuFeasible,  ///< ‖d(μ)‖∞ ≤ 1 for arbitrarily small μ (d1 = 0 case)
};

struct MuInfimum {
  MuInfimumKind kind;
  double mu = 0.0;  ///< meaningful only when kind == Finite
};

/// inf { μ > 0 : ‖d0 + μ^{−1/2} d1‖∞ ≤ 1 }, computed in one O(m) pass over
/// the per-component bounds −1 ≤ d0ᵢ + t·d1ᵢ ≤ 1 on t = μ^{−1/2}. The
/// feasible t-set is a closed interval, so a finite infimum is attained.
MuInfimum min_mu_feasible(const DirectionDecomposition& dd);

/// The μ minimizing ‖d0 + μ^{−1/2} d1‖², i.e. √μ = ‖d1‖² / (−d0ᵀd1).
/// Defined only when d0ᵀd1 < 0 and d1 ≠ 0; otherwise the minimizer sits at a
/// μ-boundary and std::nullopt is returned so the caller can fall back to its
/// default μ₀.
std::optional<double> least_squares_mu(const DirectionDecomposition& dd);

/// Parameters certifying the shortstep iteration bound: with ζ = q⁻¹(θ) − ε,
///
///   θ^(2^N) ≤ ε²   and   ½ log k = q⁻¹(ζ²/m),
///
/// the loop that divides μ by k and takes N full Newton steps stays within
/// the quadratic-convergence region and finishes in at most
/// N⌈c_rate⁻¹ √m log(μ₀/μ_f)⌉ steps, c_rate = 2q⁻¹(ζ²).
struct ShortstepParams {
  double theta;
  double epsilon;
  int N;
  double k;
  double zeta;
  double c_rate;
};

/// Computes ShortstepParams for a given θ ∈ (0, ½], ε ∈ (0, q⁻¹(θ)), and
/// constraint count m; N is the smallest positive integer satisfying the
/// first condition. Throws std::invalid_argument on range violations.
ShortstepParams select_shortstep_params(double theta, double epsilon,
                                        Eigen::Index m);

/// N⌈c_rate⁻¹ √m log(μ₀/μ_f)⌉, the Newton-step bound for shortstep started
/// at a centered point.
long shortstep_step_bound(const ShortstepParams& params, Eigen::Index m,
                          double mu0, double mu_f);

}  // namespace logqp
