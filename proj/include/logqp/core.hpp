#pragma once

#include <Eigen/Core>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace logqp {

/// Thrown when a numerical operation cannot proceed: a Cholesky pivot is not
/// positive, an iterate overflows the exp() guard, or an iteration cap is hit.
/// Solver entry points catch it and report SolveStatus::NumericalFailure.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& what, int pivot = -1)
      : std::runtime_error(what), pivot_(pivot) {}

  /// Index of the failing pivot for factorization errors; -1 otherwise.
  int pivot() const noexcept { return pivot_; }

 private:
  int pivot_;
};

/// Convex quadratic program
///
///   minimize    ½ xᵀWx + cᵀx
///   subject to  Ax + b ≥ 0
///
/// with W symmetric positive semidefinite and AᵀA + W positive definite.
/// Instances are immutable after construction and safe to share across
/// threads.
struct QPInstance {
  Eigen::MatrixXd W;  ///< n×n quadratic cost, symmetric as stored
  Eigen::VectorXd c;  ///< n linear cost
  Eigen::MatrixXd A;  ///< m×n inequality rows
  Eigen::VectorXd b;  ///< m inequality offsets

  Eigen::Index n() const { return W.rows(); }
  Eigen::Index m() const { return A.rows(); }

  /// ½ xᵀWx + cᵀx
  double objective(const Eigen::VectorXd& x) const;

  /// Checked constructor. Throws std::invalid_argument on dimension
  /// mismatches, non-finite entries, or asymmetry of W beyond rounding.
  /// W is stored as ½(W + Wᵀ) so that W == Wᵀ holds exactly.
  static QPInstance make(Eigen::MatrixXd W, Eigen::VectorXd c,
                         Eigen::MatrixXd A, Eigen::VectorXd b);
};

/// Log-domain iterate (v, μ). The parameterization λ = √μ·eᵛ, s = √μ·e⁻ᵛ
/// enforces s∘λ = μ𝟏 identically, and both stay strictly positive for any
/// finite v within the exp() range. Solvers call check() after every update.
struct Iterate {
  Eigen::VectorXd v;
  double mu = 1.0;

  /// √μ·e⁻ᵛ
  Eigen::VectorXd slack() const;
  /// √μ·eᵛ
  Eigen::VectorXd multiplier() const;

  /// Throws numerical_error unless mu > 0, v is finite, and the induced
  /// slack and multiplier are strictly positive componentwise.
  void check() const;
};

/// Outcome of validate(): empty violation list means the instance satisfies
/// the checkable regularity conditions.
struct ValidationReport {
  bool ok = false;
  std::vector<std::string> violations;
};

/// Checks the two conditions decidable from the data: W is positive
/// semidefinite (shifted Cholesky of W + δI, δ = 1e-10·max(1, ‖W‖_max)) and
/// AᵀA + W is positive definite (plain Cholesky). Slater-point existence and
/// sublevel-set boundedness are not verifiable from the matrices and are not
/// checked. Pure: never mutates the instance.
ValidationReport validate(const QPInstance& qp);

/// Dense Cholesky factorization of a symmetric positive definite matrix.
/// Reads only the lower triangle. Immutable after construction; one
/// factorization may serve many solve() calls, also concurrently.
class SpdFactorization {
 public:
  /// Throws numerical_error carrying the failing pivot index if M is not
  /// numerically positive definite.
  static SpdFactorization compute(const Eigen::MatrixXd& M);

  /// Solves M x = f. Relative residual ‖Mx − f‖ / max(1, ‖f‖) ≤ 1e-8.
  Eigen::VectorXd solve(const Eigen::VectorXd& f) const;

  /// In-place variant of solve().
  void solve_in_place(Eigen::VectorXd& f) const;

  Eigen::Index size() const { return L_.rows(); }

 private:
  SpdFactorization() = default;
  Eigen::MatrixXd L_;  // lower-triangular factor, M = L Lᵀ
};

/// Factors a symmetric matrix; throws numerical_error(pivot) if a pivot is
/// not positive.
SpdFactorization spd_factor(const Eigen::MatrixXd& M);

enum class SolveStatus { Solved, IterationLimit, NumericalFailure };

const char* to_string(SolveStatus status);

/// One solver iteration, recorded just before the v-update: the μ in effect,
/// ‖d‖∞ of the direction stepped along, and the gap value μ(m − ‖d‖²).
struct TracePoint {
  double mu;
  double d_inf;
  double gap;
};

/// Result of a solve. x, s, lambda, gap are populated only when
/// status == Solved; v and d hold the terminal log-domain iterate and Newton
/// direction so the feasibility and gap certificates can be re-derived
/// externally.
struct SolveReport {
  SolveStatus status = SolveStatus::NumericalFailure;
  Eigen::VectorXd x;       ///< recovered primal point
  Eigen::VectorXd s;       ///< recovered slack, s = Ax + b ≥ 0
  Eigen::VectorXd lambda;  ///< recovered multipliers ≥ 0
  Eigen::VectorXd v;       ///< terminal log-domain iterate
  Eigen::VectorXd d;       ///< Newton direction at (v, final_mu)
  double final_mu = 0.0;
  double gap = 0.0;  ///< ⟨s, λ⟩ = ‖s∘λ‖₁
  long newton_steps = 0;
  std::string message;  ///< diagnostic on failure statuses
  std::vector<TracePoint> trace;
};

}  // namespace logqp
