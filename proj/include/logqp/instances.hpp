#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "logqp/core.hpp"

namespace logqp {

/// Deterministic standard-normal stream: mt19937_64 driving a Box–Muller
/// transform. u₁ is drawn in (0, 1] and u₂ in [0, 1) from the top 53 engine
/// bits, then z = √(−2 ln u₁)·(cos, sin)(2π u₂); both values of each pair are
/// consumed. Identical seeds give bit-identical streams on any platform with
/// IEEE doubles.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}

  /// Next standard-normal draw.
  double next();

  /// Fills row-major: row 0 left to right, then row 1, ...
  Eigen::MatrixXd matrix(Eigen::Index rows, Eigen::Index cols);

  Eigen::VectorXd vector(Eigen::Index size);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Specification for a random QP: W = RᵀR with R ∈ ℝ^{r×n}; r = 0 gives a
/// linear objective.
struct GeneratorSpec {
  Eigen::Index n;
  Eigen::Index m;
  Eigen::Index r;
  std::uint64_t seed = 0;
};

/// Draws a random instance. A and R have standard-normal entries with each
/// row rescaled to unit norm; x is standard normal; s = 𝟏 + |w|/10 and
/// λ = 𝟏 + |w'|/10 for independent normal w, w'; then b = s − Ax and
/// c = Aᵀλ − Wx, so (x, s) is a strictly feasible pair by construction.
///
/// One NormalStream seeded with spec.seed supplies all draws in the order
/// A, R, x, w, w'. If the instance fails validate() (possible only for
/// degenerate shapes, e.g. r + m < n), the seed is bumped by one and the draw
/// repeated, at most 5 times, after which a numerical_error is thrown.
QPInstance generate_random_qp(const GeneratorSpec& spec);

enum class AnalyticKind {
  Anchor,   ///< min ½x² s.t. x ≥ 0; v̂(μ) = 0, x̂(μ) = √μ, V* = 0
  Shifted,  ///< min ½x² − 2x s.t. x ≥ 0; x̂(μ) = 1 + √(1+μ), V* = −2
};

/// 1-D instance whose central path is known in closed form; the closed form
/// is the oracle the solvers are tested against.
struct AnalyticInstance {
  QPInstance qp;
  AnalyticKind kind;
  double optimal_value;

  double x_hat(double mu) const;
  double s_hat(double mu) const;
  double lambda_hat(double mu) const;
  double v_hat(double mu) const;
};

AnalyticInstance analytic_instance(AnalyticKind kind);

/// Reads a QP from the JSON schema
///   {"n": int, "m": int, "W": [[row-major]], "c": [...], "A": [[...]], "b": [...]}.
/// Rejects missing or mistyped fields, NaN/Inf entries, and dimension
/// mismatches with a diagnostic naming the offending field. Throws
/// std::runtime_error; never aborts on user files.
QPInstance read_qp(const std::string& path);

/// Parses the same schema from an in-memory string.
QPInstance read_qp_json(const std::string& text);

/// Writes the JSON schema with full round-trip precision.
void write_qp(const QPInstance& qp, const std::string& path);

std::string write_qp_json(const QPInstance& qp);

}  // namespace logqp
