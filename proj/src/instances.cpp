#include "logqp/instances.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace logqp {

double NormalStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  constexpr double k2_53 = 1.0 / 9007199254740992.0;  // 2^-53
  const double u1 = static_cast<double>((engine_() >> 11) + 1) * k2_53;
  const double u2 = static_cast<double>(engine_() >> 11) * k2_53;
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

Eigen::MatrixXd NormalStream::matrix(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      out(i, j) = next();
    }
  }
  return out;
}

Eigen::VectorXd NormalStream::vector(Eigen::Index size) {
  Eigen::VectorXd out(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    out[i] = next();
  }
  return out;
}

namespace {

QPInstance generate_once(const GeneratorSpec& spec, std::uint64_t seed) {
  NormalStream rng(seed);

  Eigen::MatrixXd A = rng.matrix(spec.m, spec.n);
  for (Eigen::Index i = 0; i < spec.m; ++i) {
    A.row(i) /= A.row(i).norm();
  }

  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(spec.n, spec.n);
  if (spec.r > 0) {
    Eigen::MatrixXd R = rng.matrix(spec.r, spec.n);
    for (Eigen::Index i = 0; i < spec.r; ++i) {
      R.row(i) /= R.row(i).norm();
    }
    W.selfadjointView<Eigen::Lower>().rankUpdate(R.transpose());
    W = W.selfadjointView<Eigen::Lower>();
  }

  const Eigen::VectorXd x = rng.vector(spec.n);
  const Eigen::VectorXd s =
      Eigen::VectorXd::Ones(spec.m) + 0.1 * rng.vector(spec.m).cwiseAbs();
  const Eigen::VectorXd lambda =
      Eigen::VectorXd::Ones(spec.m) + 0.1 * rng.vector(spec.m).cwiseAbs();

  Eigen::VectorXd b = s - A * x;
  Eigen::VectorXd c = A.transpose() * lambda - W * x;
  return QPInstance::make(std::move(W), std::move(c), std::move(A),
                          std::move(b));
}

}  // namespace

QPInstance generate_random_qp(const GeneratorSpec& spec) {
  if (spec.n <= 0 || spec.m <= 0) {
    throw std::invalid_argument("generate_random_qp: n and m must be positive");
  }
  if (spec.r < 0 || spec.r > spec.n) {
    throw std::invalid_argument("generate_random_qp: requires 0 <= r <= n");
  }

  constexpr int kMaxRetries = 5;
  for (int attempt = 0; attempt <= kMaxRetries; ++attempt) {
    QPInstance qp = generate_once(spec, spec.seed + attempt);
    if (validate(qp).ok) {
      return qp;
    }
  }
  throw numerical_error(
      "generate_random_qp: no valid instance after " +
      std::to_string(kMaxRetries) + " retries (n=" + std::to_string(spec.n) +
      ", m=" + std::to_string(spec.m) + ", r=" + std::to_string(spec.r) +
      "); the shape likely violates the regularity assumption");
}

AnalyticInstance analytic_instance(AnalyticKind kind) {
  Eigen::MatrixXd one(1, 1);
  one << 1.0;
  Eigen::VectorXd zero1 = Eigen::VectorXd::Zero(1);

  AnalyticInstance inst{
      QPInstance::make(one,
                       kind == AnalyticKind::Anchor
                           ? zero1
                           : Eigen::VectorXd::Constant(1, -2.0),
                       one, zero1),
      kind,
      kind == AnalyticKind::Anchor ? 0.0 : -2.0,
  };
  return inst;
}

double AnalyticInstance::x_hat(double mu) const {
  return kind == AnalyticKind::Anchor ? std::sqrt(mu)
                                      : 1.0 + std::sqrt(1.0 + mu);
}

double AnalyticInstance::s_hat(double mu) const {
  return x_hat(mu);  // s = Ax + b = x for both instances
}

double AnalyticInstance::lambda_hat(double mu) const {
  return kind == AnalyticKind::Anchor ? std::sqrt(mu) : x_hat(mu) - 2.0;
}

double AnalyticInstance::v_hat(double mu) const {
  // λ = √μ eᵛ and s = √μ e⁻ᵛ give v = ½ log(λ/s).
  return 0.5 * std::log(lambda_hat(mu) / s_hat(mu));
}

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw std::runtime_error(where + ": " + what);
}

const json& require_field(const json& j, const char* name,
                          const std::string& where) {
  auto it = j.find(name);
  if (it == j.end()) {
    fail(where, std::string("missing field \"") + name + "\"");
  }
  return *it;
}

double number_at(const json& v, const char* field, const std::string& where) {
  if (!v.is_number()) {
    fail(where, std::string("field \"") + field + "\" has a non-numeric entry");
  }
  const double x = v.get<double>();
  if (!std::isfinite(x)) {
    fail(where, std::string("field \"") + field + "\" has a non-finite entry");
  }
  return x;
}

Eigen::VectorXd parse_vector(const json& j, const char* field,
                             Eigen::Index expected, const std::string& where) {
  if (!j.is_array()) {
    fail(where, std::string("field \"") + field + "\" must be an array");
  }
  if (static_cast<Eigen::Index>(j.size()) != expected) {
    fail(where, std::string("field \"") + field + "\" has length " +
                    std::to_string(j.size()) + ", expected " +
                    std::to_string(expected));
  }
  Eigen::VectorXd out(expected);
  for (Eigen::Index i = 0; i < expected; ++i) {
    out[i] = number_at(j[static_cast<std::size_t>(i)], field, where);
  }
  return out;
}

Eigen::MatrixXd parse_matrix(const json& j, const char* field,
                             Eigen::Index rows, Eigen::Index cols,
                             const std::string& where) {
  if (!j.is_array()) {
    fail(where, std::string("field \"") + field + "\" must be an array of rows");
  }
  if (static_cast<Eigen::Index>(j.size()) != rows) {
    fail(where, std::string("field \"") + field + "\" has " +
                    std::to_string(j.size()) + " rows, expected " +
                    std::to_string(rows));
  }
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      fail(where, std::string("field \"") + field + "\" row " +
                      std::to_string(i) + " does not have " +
                      std::to_string(cols) + " entries");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      out(i, k) = number_at(row[static_cast<std::size_t>(k)], field, where);
    }
  }
  return out;
}

QPInstance parse_qp(const json& j, const std::string& where) {
  if (!j.is_object()) {
    fail(where, "top-level value must be an object");
  }
  const json& jn = require_field(j, "n", where);
  const json& jm = require_field(j, "m", where);
  if (!jn.is_number_integer() || !jm.is_number_integer()) {
    fail(where, "fields \"n\" and \"m\" must be integers");
  }
  const auto n = jn.get<Eigen::Index>();
  const auto m = jm.get<Eigen::Index>();
  if (n <= 0 || m <= 0) {
    fail(where, "fields \"n\" and \"m\" must be positive");
  }

  Eigen::MatrixXd W = parse_matrix(require_field(j, "W", where), "W", n, n,
                                   where);
  Eigen::VectorXd c = parse_vector(require_field(j, "c", where), "c", n,
                                   where);
  Eigen::MatrixXd A = parse_matrix(require_field(j, "A", where), "A", m, n,
                                   where);
  Eigen::VectorXd b = parse_vector(require_field(j, "b", where), "b", m,
                                   where);

  try {
    return QPInstance::make(std::move(W), std::move(c), std::move(A),
                            std::move(b));
  } catch (const std::invalid_argument& e) {
    fail(where, e.what());
  }
}

}  // namespace

QPInstance read_qp_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    fail("qp json", e.what());
  }
  return parse_qp(j, "qp json");
}

QPInstance read_qp(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    fail(path, "cannot open file");
  }
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    fail(path, e.what());
  }
  return parse_qp(j, path);
}

std::string write_qp_json(const QPInstance& qp) {
  json j;
  j["n"] = qp.n();
  j["m"] = qp.m();
  auto rows = [](const Eigen::MatrixXd& M) {
    json out = json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < M.cols(); ++k) {
        row.push_back(M(i, k));
      }
      out.push_back(std::move(row));
    }
    return out;
  };
  j["W"] = rows(qp.W);
  j["c"] = std::vector<double>(qp.c.begin(), qp.c.end());
  j["A"] = rows(qp.A);
  j["b"] = std::vector<double>(qp.b.begin(), qp.b.end());
  return j.dump();
}

void write_qp(const QPInstance& qp, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    fail(path, "cannot open file for writing");
  }
  out << write_qp_json(qp) << '\n';
  if (!out) {
    fail(path, "write failed");
  }
}

}  // namespace logqp
