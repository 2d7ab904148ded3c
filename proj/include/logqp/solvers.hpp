#pragma once

#include <functional>
#include <optional>

#include "logqp/core.hpp"
#include "logqp/newton.hpp"
#include "logqp/path.hpp"

namespace logqp {

enum class Algorithm {
  LogDomainLong,
  LogDomainShort,
  PrimalBarrier,
  DualBarrier,
};

const char* to_string(Algorithm algo);

/// Solver knobs and the centralized tolerance defaults.
struct SolverConfig {
  double beta = 0.5;           ///< step-size parameter, in [1/2, 1)
  double mu_f = 1e-3;          ///< target centering parameter
  long max_newton_steps = 10000;
  double barrier_eps = 0.01;   ///< barrier μ-rule slack, in (0, 1)
  double d_tol_center = 1e-10;
  int center_max_iter = 500;
  Algorithm algorithm = Algorithm::LogDomainLong;

  /// Contract tolerances shared by the residual checks.
  static constexpr double kSpdResidual = 1e-8;
  static constexpr double kEqualityResidual = 1e-6;
  static constexpr double kGapIdentity = 1e-8;

  /// Throws std::invalid_argument on out-of-range fields.
  void check() const;
};

/// Primal-dual point recovered from a Newton step with ‖d‖∞ ≤ 1:
/// λ = √μ eᵛ∘(𝟏+d), s = √μ e⁻ᵛ∘(𝟏−d), x = step.x. The triple is primal-dual
/// feasible and ⟨s, λ⟩ = μ(m − ‖d‖²).
struct Recovered {
  Eigen::VectorXd x;
  Eigen::VectorXd s;
  Eigen::VectorXd lambda;
  double gap;
};

/// Returns std::nullopt when ‖step.d‖∞ > 1 (the feasibility certificate does
/// not apply; nothing is clipped). Otherwise verifies Ax+b = s and Aᵀλ = Wx+c
/// to kEqualityResidual, s, λ ≥ 0, and the gap identity to kGapIdentity,
/// throwing numerical_error if any of them fails.
std::optional<Recovered> recover_solution(const QPInstance& qp,
                                          const NewtonStep& step);

/// Long-step log-domain interior-point method. Repeats
///
///   μ ← min(μ, inf{ μ > 0 : ‖d(v, μ)‖∞ ≤ 1 }),
///   α ← max(1, ‖d(v, μ)‖∞² / 2β),
///   v ← v + α⁻¹ d(v, μ)
///
/// until μ ≤ mu_f and ‖d(v, μ)‖∞ ≤ 1, then recovers (x, s, λ). Any v0 is a
/// valid start. An empty μ-infimum keeps the current μ; an infimum at μ → 0
/// jumps directly to mu_f. Each iteration performs one factorization; the
/// two decomposition solves and the reconstruction at the updated μ reuse it.
/// Requires mu0 > mu_f > 0.
SolveReport longstep(const QPInstance& qp, const Eigen::VectorXd& v0,
                     double mu0, const SolverConfig& cfg);

/// Observer invoked at each outer shortstep boundary, right after μ is
/// divided by k and before the N Newton steps.
using OuterObserver = std::function<void(const Eigen::VectorXd& v, double mu)>;

/// Short-step method: divide μ by params.k, take exactly params.N full Newton
/// steps, repeat while μ > mu_f. The input is first centered to v̂(mu0)
/// (the iteration bound assumes a centered start; newton_steps counts only
/// the loop's own v-updates). Terminates with μ ≤ mu_f and ‖v − v̂(μ)‖ ≤
/// params.epsilon.
SolveReport shortstep(const QPInstance& qp, const Eigen::VectorXd& v0,
                      double mu0, const SolverConfig& cfg,
                      const ShortstepParams& params,
                      const OuterObserver& observer = {});

/// v-update of the primal barrier method: −log(e⁻ᵛ ∘ (𝟏 − α⁻¹d)), the
/// first-order approximation s ← s∘(𝟏 − α⁻¹d) of the log-domain update.
/// Throws numerical_error if any log argument is nonpositive.
Eigen::VectorXd primal_barrier_step(const Eigen::VectorXd& v,
                                    const Eigen::VectorXd& d, double alpha);

/// v-update of the dual barrier method: log(eᵛ ∘ (𝟏 + α⁻¹d)), equivalent to
/// λ ← λ∘(𝟏 + α⁻¹d).
Eigen::VectorXd dual_barrier_step(const Eigen::VectorXd& v,
                                  const Eigen::VectorXd& d, double alpha);

/// longstep with the μ-rule box shrunk to ±(1 − barrier_eps) and the v-update
/// replaced by the barrier step selected by cfg.algorithm (PrimalBarrier or
/// DualBarrier). The shrunken box keeps every log argument positive when the
/// rule is attained.
SolveReport barrier_longstep(const QPInstance& qp, const Eigen::VectorXd& v0,
                             double mu0, const SolverConfig& cfg);

/// Dispatches on cfg.algorithm. Shortstep uses the given params, or
/// select_shortstep_params(0.5, 0.25, m) when absent.
SolveReport solve(const QPInstance& qp, const Eigen::VectorXd& v0, double mu0,
                  const SolverConfig& cfg,
                  const std::optional<ShortstepParams>& params = std::nullopt);

}  // namespace logqp
