// Test-only oracles, independent of the library's solve paths: Gaussian
// elimination with partial pivoting, Jacobi eigenvalues, active-set
// enumeration for tiny QPs, and a bisection inverse of q. Used to derive
// expected values rather than trusting the code under test.
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include <Eigen/Core>

#include "logqp/core.hpp"
#include "logqp/instances.hpp"
#include "logqp/newton.hpp"

namespace logqp::test {

/// Dense linear solve by Gaussian elimination with partial pivoting. Kept
/// deliberately separate from the library's Cholesky path.
inline Eigen::VectorXd gauss_solve(Eigen::MatrixXd A, Eigen::VectorXd b) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n || b.size() != n) {
    throw std::invalid_argument("gauss_solve: shape mismatch");
  }
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index p = k;
    for (Eigen::Index i = k + 1; i < n; ++i) {
      if (std::abs(A(i, k)) > std::abs(A(p, k))) {
        p = i;
      }
    }
    if (A(p, k) == 0.0) {
      throw std::invalid_argument("gauss_solve: singular matrix");
    }
    if (p != k) {
      A.row(p).swap(A.row(k));
      std::swap(b[p], b[k]);
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      const double f = A(i, k) / A(k, k);
      A.row(i).tail(n - k) -= f * A.row(k).tail(n - k);
      b[i] -= f * b[k];
    }
  }
  Eigen::VectorXd x(n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    x[i] = (b[i] - A.row(i).tail(n - i - 1).dot(x.tail(n - i - 1))) / A(i, i);
  }
  return x;
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
inline std::vector<double> jacobi_eigenvalues(Eigen::MatrixXd S) {
  const Eigen::Index n = S.rows();
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        off += S(p, q) * S(p, q);
      }
    }
    if (off < 1e-30) {
      break;
    }
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (std::abs(S(p, q)) < 1e-300) {
          continue;
        }
        const double tau = (S(q, q) - S(p, p)) / (2.0 * S(p, q));
        const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double cos = 1.0 / std::sqrt(1.0 + t * t);
        const double sin = t * cos;
        Eigen::VectorXd col_p = S.col(p);
        Eigen::VectorXd col_q = S.col(q);
        S.col(p) = cos * col_p - sin * col_q;
        S.col(q) = sin * col_p + cos * col_q;
        Eigen::VectorXd row_p = S.row(p);
        Eigen::VectorXd row_q = S.row(q);
        S.row(p) = cos * row_p - sin * row_q;
        S.row(q) = sin * row_p + cos * row_q;
      }
    }
  }
  std::vector<double> eig(S.diagonal().begin(), S.diagonal().end());
  std::sort(eig.begin(), eig.end());
  return eig;
}

/// Exact optimal value of a tiny QP (W positive definite, n small) by
/// enumerating active sets: the optimum solves the equality-constrained
/// subproblem of its own active set, so the best feasible candidate over all
/// subsets of size ≤ n is V*.
inline double brute_force_optimal_value(const QPInstance& qp) {
  const Eigen::Index n = qp.n();
  const Eigen::Index m = qp.m();
  if (n > 3) {
    throw std::invalid_argument("brute_force_optimal_value: n too large");
  }

  const double feas_tol = 1e-9;
  auto feasible = [&](const Eigen::VectorXd& x) {
    return ((qp.A * x + qp.b).array() >= -feas_tol).all();
  };

  double best = std::numeric_limits<double>::infinity();
  bool found = false;

  std::vector<Eigen::Index> subset;
  auto try_subset = [&](const std::vector<Eigen::Index>& active) {
    const Eigen::Index k = static_cast<Eigen::Index>(active.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(n + k, n + k);
    Eigen::VectorXd rhs(n + k);
    kkt.topLeftCorner(n, n) = qp.W;
    rhs.head(n) = -qp.c;
    for (Eigen::Index j = 0; j < k; ++j) {
      kkt.block(n + j, 0, 1, n) = qp.A.row(active[j]);
      kkt.block(0, n + j, n, 1) = qp.A.row(active[j]).transpose();
      rhs[n + j] = -qp.b[active[j]];
    }
    Eigen::VectorXd z;
    try {
      z = gauss_solve(kkt, rhs);
    } catch (const std::invalid_argument&) {
      return;  // degenerate subset
    }
    const Eigen::VectorXd x = z.head(n);
    if (feasible(x)) {
      best = std::min(best, qp.objective(x));
      found = true;
    }
  };

  // All subsets of constraints of size 0..n.
  const Eigen::Index limit = Eigen::Index{1} << m;
  for (Eigen::Index mask = 0; mask < limit; ++mask) {
    subset.clear();
    for (Eigen::Index i = 0; i < m; ++i) {
      if (mask & (Eigen::Index{1} << i)) {
        subset.push_back(i);
      }
    }
    if (static_cast<Eigen::Index>(subset.size()) <= n) {
      try_subset(subset);
    }
  }
  if (!found) {
    throw std::invalid_argument("brute_force_optimal_value: no feasible "
                                "candidate");
  }
  return best;
}

/// Bisection inverse of q(t) = 2(cosh t − 1), independent of the closed-form
/// arccosh implementation.
inline double q_inverse_bisect(double y) {
  if (y < 0.0) {
    throw std::invalid_argument("q_inverse_bisect: negative argument");
  }
  if (y == 0.0) {
    return 0.0;
  }
  long double lo = 0.0L;
  long double hi = 1.0L;
  auto q_ld = [](long double t) { return 2.0L * (std::cosh(t) - 1.0L); };
  while (q_ld(hi) < y) {
    hi *= 2.0L;
  }
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    if (q_ld(mid) < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return static_cast<double>(0.5L * (lo + hi));
}

/// Numerical centered point used as the v̂(μ) oracle. The damped phase of
/// the step rule shrinks divergence by at least β per iteration, so the cap
/// covers starts with divergence in the thousands.
inline Eigen::VectorXd centered_point(const QPInstance& qp, double mu,
                                      const Eigen::VectorXd& v_start,
                                      double tol = 1e-10) {
  return center(qp, v_start, mu, tol, 0.5, 20000);
}

inline Eigen::VectorXd centered_point(const QPInstance& qp, double mu,
                                      double tol = 1e-10) {
  return centered_point(qp, mu, Eigen::VectorXd::Zero(qp.m()), tol);
}

/// h_μ(v) = h(v̂(μ), v) against the numerical oracle.
inline double h_mu(const QPInstance& qp, double mu, const Eigen::VectorXd& v) {
  return divergence(centered_point(qp, mu, v), v);
}

inline double inf_norm(const Eigen::VectorXd& x) {
  return x.size() > 0 ? x.cwiseAbs().maxCoeff() : 0.0;
}

inline QPInstance random_qp(Eigen::Index n, Eigen::Index m, Eigen::Index r,
                            std::uint64_t seed) {
  return generate_random_qp(GeneratorSpec{n, m, r, seed});
}

}  // namespace logqp::test
