#include <random>

#include "doctest.h"
#include "logqp/core.hpp"
#include "support.hpp"

using namespace logqp;

namespace {

QPInstance one_dim(double w, double c, double a, double b) {
  Eigen::MatrixXd W(1, 1);
  W << w;
  Eigen::MatrixXd A(1, 1);
  A << a;
  return QPInstance::make(W, Eigen::VectorXd::Constant(1, c), A,
                          Eigen::VectorXd::Constant(1, b));
}

}  // namespace

TEST_CASE("QPInstance::make rejects malformed data") {
  Eigen::MatrixXd W = Eigen::MatrixXd::Identity(2, 2);
  Eigen::MatrixXd A = Eigen::MatrixXd::Ones(3, 2);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(3);

  CHECK_NOTHROW(QPInstance::make(W, c, A, b));
  CHECK_THROWS_AS(QPInstance::make(W, Eigen::VectorXd::Zero(3), A, b),
                  std::invalid_argument);
  CHECK_THROWS_AS(QPInstance::make(W, c, A, Eigen::VectorXd::Zero(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(QPInstance::make(Eigen::MatrixXd::Ones(2, 3), c, A, b),
                  std::invalid_argument);

  Eigen::MatrixXd skew = W;
  skew(0, 1) = 0.5;  // clearly asymmetric
  CHECK_THROWS_AS(QPInstance::make(skew, c, A, b), std::invalid_argument);

  Eigen::MatrixXd with_nan = W;
  with_nan(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(QPInstance::make(with_nan, c, A, b), std::invalid_argument);
}

TEST_CASE("QPInstance::make stores an exactly symmetric W") {
  Eigen::MatrixXd W(2, 2);
  W << 2.0, 1.0 + 1e-15, 1.0, 2.0;  // rounding-level asymmetry is absorbed
  QPInstance qp = QPInstance::make(W, Eigen::VectorXd::Zero(2),
                                   Eigen::MatrixXd::Identity(2, 2),
                                   Eigen::VectorXd::Zero(2));
  CHECK(qp.W == qp.W.transpose());
}

TEST_CASE("validate accepts the one-dimensional anchor data") {
  ValidationReport rep = validate(one_dim(1.0, 0.0, 1.0, 0.0));
  CHECK(rep.ok);
  CHECK(rep.violations.empty());
}

TEST_CASE("validate flags a singular AᵀA + W") {
  ValidationReport rep = validate(one_dim(0.0, 0.0, 0.0, 0.0));
  CHECK_FALSE(rep.ok);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].find("positive definite") != std::string::npos);
}

TEST_CASE("validate agrees with an eigenvalue oracle on a generated instance") {
  QPInstance qp = test::random_qp(5, 10, 3, 0);
  CHECK(validate(qp).ok);

  Eigen::MatrixXd gram = qp.A.transpose() * qp.A + qp.W;
  std::vector<double> eig = test::jacobi_eigenvalues(gram);
  CHECK(eig.front() > 0.0);

  // W = RᵀR must be PSD up to rounding.
  std::vector<double> eig_w = test::jacobi_eigenvalues(qp.W);
  CHECK(eig_w.front() > -1e-12);
}

TEST_CASE("validate is pure") {
  QPInstance qp = one_dim(0.0, 1.0, 0.0, 1.0);
  ValidationReport r1 = validate(qp);
  ValidationReport r2 = validate(qp);
  CHECK(r1.ok == r2.ok);
  CHECK(r1.violations == r2.violations);
}

TEST_CASE("jacobi eigenvalue oracle self-check") {
  Eigen::MatrixXd S(2, 2);
  S << 2.0, 1.0, 1.0, 2.0;
  std::vector<double> eig = test::jacobi_eigenvalues(S);
  CHECK(eig[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(eig[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("spd_factor solves the worked examples") {
  SUBCASE("identity") {
    SpdFactorization f = spd_factor(Eigen::MatrixXd::Identity(3, 3));
    Eigen::VectorXd rhs(3);
    rhs << 1.0, 2.0, 3.0;
    CHECK((f.solve(rhs) - rhs).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("diagonal") {
    Eigen::MatrixXd M(2, 2);
    M << 4.0, 0.0, 0.0, 9.0;
    Eigen::VectorXd rhs(2);
    rhs << 8.0, 18.0;
    Eigen::VectorXd x = spd_factor(M).solve(rhs);
    CHECK(x[0] == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-14));
  }
  SUBCASE("dense 2x2 against hand inversion") {
    Eigen::MatrixXd M(2, 2);
    M << 2.0, 1.0, 1.0, 2.0;
    Eigen::VectorXd rhs(2);
    rhs << 3.0, 3.0;
    Eigen::VectorXd x = spd_factor(M).solve(rhs);
    CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("spd_factor reports the failing pivot") {
  Eigen::MatrixXd M(2, 2);
  M << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3 and −1
  try {
    spd_factor(M);
    FAIL("expected numerical_error");
  } catch (const numerical_error& e) {
    CHECK(e.pivot() == 1);
  }

  try {
    spd_factor(Eigen::MatrixXd::Constant(1, 1, -1.0));
    FAIL("expected numerical_error");
  } catch (const numerical_error& e) {
    CHECK(e.pivot() == 0);
  }
}

TEST_CASE("spd_factor meets the residual contract on random SPD systems") {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 40; ++trial) {
    const Eigen::Index n = 2 + static_cast<Eigen::Index>(rng() % 39);
    Eigen::MatrixXd G(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        G(i, j) = normal(rng);
      }
    }
    Eigen::MatrixXd M =
        G.transpose() * G + Eigen::MatrixXd::Identity(n, n);
    M = 0.5 * (M + M.transpose());

    Eigen::VectorXd x0(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      x0[i] = normal(rng);
    }
    x0 *= 1e3 / x0.norm();  // ‖x₀‖ = 1e3, the contract's scale bound

    const Eigen::VectorXd f = M * x0;
    const Eigen::VectorXd x = spd_factor(M).solve(f);
    CHECK((x - x0).norm() / x0.norm() <= 1e-8);
    CHECK((M * x - f).norm() / std::max(1.0, f.norm()) <= 1e-8);
  }
}

TEST_CASE("Iterate induces strictly positive slack and multiplier") {
  Iterate it{Eigen::VectorXd::Constant(2, 0.5), 4.0};
  CHECK_NOTHROW(it.check());
  // s∘λ = μ𝟏 holds identically in the parameterization.
  CHECK(test::inf_norm(it.slack().cwiseProduct(it.multiplier()) -
                       Eigen::VectorXd::Constant(2, 4.0)) <= 1e-14);
  CHECK(it.slack().minCoeff() > 0.0);
  CHECK(it.multiplier().minCoeff() > 0.0);

  it.mu = 0.0;
  CHECK_THROWS_AS(it.check(), numerical_error);
  it.mu = 1.0;
  it.v[0] = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(it.check(), numerical_error);
  it.mu = 1e-300;
  it.v[0] = -700.0;  // √μ·eᵛ underflows to exactly zero
  CHECK_THROWS_AS(it.check(), numerical_error);
}

TEST_CASE("objective evaluates the quadratic form") {
  QPInstance qp = one_dim(2.0, -1.0, 1.0, 0.0);
  CHECK(qp.objective(Eigen::VectorXd::Constant(1, 3.0)) ==
        doctest::Approx(0.5 * 2.0 * 9.0 - 3.0));
}
