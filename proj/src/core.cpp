#include "logqp/core.hpp"

#include <cmath>
#include <utility>

namespace logqp {

double QPInstance::objective(const Eigen::VectorXd& x) const {
  return 0.5 * x.dot(W * x) + c.dot(x);
}

QPInstance QPInstance::make(Eigen::MatrixXd W, Eigen::VectorXd c,
                            Eigen::MatrixXd A, Eigen::VectorXd b) {
  const Eigen::Index n = W.rows();
  const Eigen::Index m = A.rows();
  if (n == 0 || m == 0) {
    throw std::invalid_argument("QPInstance: n and m must be positive");
  }
  if (W.cols() != n) {
    throw std::invalid_argument("QPInstance: W must be square");
  }
  if (c.size() != n) {
    throw std::invalid_argument("QPInstance: c has length " +
                                std::to_string(c.size()) + ", expected n = " +
                                std::to_string(n));
  }
  if (A.cols() != n) {
    throw std::invalid_argument("QPInstance: A has " +
                                std::to_string(A.cols()) +
                                " columns, expected n = " + std::to_string(n));
  }
  if (b.size() != m) {
    throw std::invalid_argument("QPInstance: b has length " +
                                std::to_string(b.size()) + ", expected m = " +
                                std::to_string(m));
  }
  if (!W.allFinite() || !c.allFinite() || !A.allFinite() || !b.allFinite()) {
    throw std::invalid_argument("QPInstance: non-finite entry in problem data");
  }

  const double w_scale = W.size() > 0 ? W.cwiseAbs().maxCoeff() : 0.0;
  const double asym = (W - W.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, w_scale)) {
    throw std::invalid_argument("QPInstance: W is not symmetric");
  }
  // Store the symmetric part so W == Wᵀ holds bitwise from here on.
  Eigen::MatrixXd W_sym = 0.5 * (W + W.transpose());

  return QPInstance{std::move(W_sym), std::move(c), std::move(A),
                    std::move(b)};
}

Eigen::VectorXd Iterate::slack() const {
  return std::sqrt(mu) * (-v.array()).exp().matrix();
}

Eigen::VectorXd Iterate::multiplier() const {
  return std::sqrt(mu) * v.array().exp().matrix();
}

void Iterate::check() const {
  if (!(mu > 0.0)) {
    throw numerical_error("Iterate: mu must be positive, got " +
                          std::to_string(mu));
  }
  if (!v.allFinite()) {
    throw numerical_error("Iterate: v has non-finite entries");
  }
  if (!(slack().array() > 0.0).all() || !(multiplier().array() > 0.0).all()) {
    throw numerical_error(
        "Iterate: induced slack or multiplier underflowed to zero");
  }
}

ValidationReport validate(const QPInstance& qp) {
  ValidationReport report;

  // Advisory PSD check of W via shifted Cholesky; the shift absorbs rounding
  // in genuinely semidefinite inputs such as W = RᵀR.
  const double w_scale = qp.W.cwiseAbs().maxCoeff();
  const double delta = 1e-10 * std::max(1.0, w_scale);
  Eigen::MatrixXd shifted = qp.W;
  shifted.diagonal().array() += delta;
  try {
    SpdFactorization::compute(shifted);
  } catch (const numerical_error& e) {
    report.violations.push_back(
        "W is not positive semidefinite (shifted Cholesky failed at pivot " +
        std::to_string(e.pivot()) + ")");
  }

  Eigen::MatrixXd gram = qp.W;
  gram.selfadjointView<Eigen::Lower>().rankUpdate(qp.A.transpose());
  try {
    SpdFactorization::compute(gram);
  } catch (const numerical_error& e) {
    report.violations.push_back(
        "AᵀA + W is not positive definite (Cholesky failed at pivot " +
        std::to_string(e.pivot()) + ")");
  }

  report.ok = report.violations.empty();
  return report;
}

SpdFactorization SpdFactorization::compute(const Eigen::MatrixXd& M) {
  const Eigen::Index n = M.rows();
  if (M.cols() != n) {
    throw std::invalid_argument("SpdFactorization: matrix must be square");
  }

  SpdFactorization fact;
  Eigen::MatrixXd& L = fact.L_;
  L = M.triangularView<Eigen::Lower>();

  // Unblocked left-looking Cholesky; each column update is one GEMV.
  for (Eigen::Index j = 0; j < n; ++j) {
    const double pivot = L(j, j) - L.row(j).head(j).squaredNorm();
    // Written so a NaN pivot also fails.
    if (!(pivot > 0.0)) {
      throw numerical_error("Cholesky pivot " + std::to_string(j) +
                                " is not positive (" + std::to_string(pivot) +
                                ")",
                            static_cast<int>(j));
    }
    const double ljj = std::sqrt(pivot);
    L(j, j) = ljj;
    const Eigen::Index rest = n - j - 1;
    if (rest > 0) {
      L.col(j).tail(rest).noalias() -=
          L.bottomLeftCorner(rest, j) * L.row(j).head(j).transpose();
      L.col(j).tail(rest) /= ljj;
    }
  }
  return fact;
}

Eigen::VectorXd SpdFactorization::solve(const Eigen::VectorXd& f) const {
  Eigen::VectorXd x = f;
  solve_in_place(x);
  return x;
}

void SpdFactorization::solve_in_place(Eigen::VectorXd& f) const {
  if (f.size() != L_.rows()) {
    throw std::invalid_argument("SpdFactorization::solve: size mismatch");
  }
  L_.triangularView<Eigen::Lower>().solveInPlace(f);
  L_.triangularView<Eigen::Lower>().transpose().solveInPlace(f);
}

SpdFactorization spd_factor(const Eigen::MatrixXd& M) {
  return SpdFactorization::compute(M);
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::Solved:
      return "Solved";
    case SolveStatus::IterationLimit:
      return "IterationLimit";
    case SolveStatus::NumericalFailure:
      return "NumericalFailure";
  }
  return "Unknown";
}

}  // namespace logqp
