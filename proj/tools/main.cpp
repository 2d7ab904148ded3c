#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "logqp/bench.hpp"
#include "logqp/core.hpp"
#include "logqp/instances.hpp"
#include "logqp/newton.hpp"
#include "logqp/path.hpp"
#include "logqp/solvers.hpp"

namespace {

using namespace logqp;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIterationLimit = 2;
constexpr int kExitNumericalFailure = 3;

int exit_code(SolveStatus status) {
  switch (status) {
    case SolveStatus::Solved:
      return kExitOk;
    case SolveStatus::IterationLimit:
      return kExitIterationLimit;
    case SolveStatus::NumericalFailure:
      return kExitNumericalFailure;
  }
  return kExitUsage;
}

Algorithm parse_algorithm(const std::string& name) {
  if (name == "longstep") return Algorithm::LogDomainLong;
  if (name == "shortstep") return Algorithm::LogDomainShort;
  if (name == "primal-barrier") return Algorithm::PrimalBarrier;
  if (name == "dual-barrier") return Algorithm::DualBarrier;
  throw std::invalid_argument("unknown algorithm \"" + name + "\"");
}

Eigen::VectorXd parse_v0(const std::string& arg, Eigen::Index m) {
  if (arg == "zero") {
    return Eigen::VectorXd::Zero(m);
  }
  std::ifstream in(arg);
  if (!in) {
    throw std::runtime_error("cannot open v0 file " + arg);
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(arg + ": " + e.what());
  }
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != m) {
    throw std::runtime_error(arg + ": v0 must be a JSON array of length " +
                             std::to_string(m));
  }
  Eigen::VectorXd v0(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& e = j[static_cast<std::size_t>(i)];
    if (!e.is_number()) {
      throw std::runtime_error(arg + ": v0 entries must be numbers");
    }
    v0[i] = e.get<double>();
    if (!std::isfinite(v0[i])) {
      throw std::runtime_error(arg + ": v0 entries must be finite");
    }
  }
  return v0;
}

void write_trace(const std::string& path, const SolveReport& report) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open trace file " + path);
  }
  out << "iter,mu,d_inf,gap\n";
  char buf[128];
  for (std::size_t i = 0; i < report.trace.size(); ++i) {
    const TracePoint& t = report.trace[i];
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g,%.17g\n", i, t.mu,
                  t.d_inf, t.gap);
    out << buf;
  }
}

struct SolveFlags {
  std::string input;
  std::string algorithm = "longstep";
  double mu_f = 1e-3;
  double beta = 0.5;
  std::string mu0 = "ls";
  std::string v0 = "zero";
  std::string trace;
  bool json = false;
  double theta = 0.5;
  double eps = 0.25;
};

int run_solve(const SolveFlags& flags) {
  QPInstance qp = read_qp(flags.input);
  ValidationReport val = validate(qp);
  if (!val.ok) {
    std::cerr << flags.input << ": instance fails validation:\n";
    for (const std::string& violation : val.violations) {
      std::cerr << "  - " << violation << '\n';
    }
    return kExitUsage;
  }

  const Algorithm algo = parse_algorithm(flags.algorithm);
  SolverConfig cfg;
  cfg.mu_f = flags.mu_f;
  cfg.beta = flags.beta;
  cfg.algorithm = algo;

  const Eigen::VectorXd v0 = parse_v0(flags.v0, qp.m());
  double mu0;
  if (flags.mu0 == "ls") {
    mu0 = default_mu0(qp, v0, cfg.mu_f);
  } else {
    try {
      mu0 = std::stod(flags.mu0);
    } catch (const std::exception&) {
      throw std::invalid_argument("--mu0 expects \"ls\" or a number, got \"" +
                                  flags.mu0 + "\"");
    }
    if (!(mu0 > 0.0)) {
      throw std::invalid_argument("--mu0 must be positive");
    }
  }

  std::optional<ShortstepParams> params;
  if (algo == Algorithm::LogDomainShort) {
    params = select_shortstep_params(flags.theta, flags.eps, qp.m());
  }

  SolveReport report = solve(qp, v0, mu0, cfg, params);

  if (!flags.trace.empty()) {
    write_trace(flags.trace, report);
  }

  const bool solved = report.status == SolveStatus::Solved;
  const double objective = solved ? qp.objective(report.x) : 0.0;
  if (flags.json) {
    nlohmann::json j;
    j["status"] = to_string(report.status);
    j["iterations"] = report.newton_steps;
    j["final_mu"] = report.final_mu;
    if (solved) {
      j["objective"] = objective;
      j["gap"] = report.gap;
    }
    if (!report.message.empty()) {
      j["message"] = report.message;
    }
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "status:     " << to_string(report.status) << '\n';
    if (solved) {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.10g", objective);
      std::cout << "objective:  " << buf << '\n';
      std::snprintf(buf, sizeof(buf), "%.10g", report.gap);
      std::cout << "gap:        " << buf << '\n';
    }
    std::cout << "iterations: " << report.newton_steps << '\n';
    std::cout << "final mu:   " << report.final_mu << '\n';
    if (!report.message.empty()) {
      std::cout << "message:    " << report.message << '\n';
    }
  }
  return exit_code(report.status);
}

struct BenchFlags {
  int n = 100;
  int m = 200;
  int rank = 0;
  int instances = 30;
  std::uint64_t seed = 0;
  std::string algos = "longstep,dual-barrier,primal-barrier";
  double mu_f = 1e-3;
  double beta = 0.5;
  std::string format = "csv";
  std::string out;
  std::string dump_dir;
};

int run_bench_cmd(const BenchFlags& flags) {
  BenchConfig cfg;
  cfg.n = flags.n;
  cfg.m = flags.m;
  cfg.rank = flags.rank;
  cfg.instances = flags.instances;
  cfg.seed_base = flags.seed;
  cfg.mu_f = flags.mu_f;
  cfg.beta = flags.beta;
  cfg.dump_dir = flags.dump_dir;

  cfg.algos.clear();
  std::string token;
  std::istringstream list(flags.algos);
  while (std::getline(list, token, ',')) {
    if (!token.empty()) {
      cfg.algos.push_back(parse_algorithm(token));
    }
  }

  const std::vector<BenchRow> rows = run_bench(cfg);
  const std::string text =
      flags.format == "md" ? to_markdown(rows) : to_csv(rows);

  if (flags.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(flags.out);
    if (!out) {
      throw std::runtime_error("cannot open output file " + flags.out);
    }
    out << text;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Log-domain interior-point methods for convex QPs"};
  app.require_subcommand(1);

  SolveFlags solve_flags;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve a QP read from a JSON file");
  solve_cmd->add_option("--input", solve_flags.input, "QP JSON file")
      ->required();
  solve_cmd
      ->add_option("--algorithm", solve_flags.algorithm,
                   "longstep|shortstep|primal-barrier|dual-barrier")
      ->check(CLI::IsMember(
          {"longstep", "shortstep", "primal-barrier", "dual-barrier"}));
  solve_cmd->add_option("--mu-f", solve_flags.mu_f, "target mu (default 1e-3)");
  solve_cmd->add_option("--beta", solve_flags.beta,
                        "step-size parameter in [1/2,1) (default 0.5)");
  solve_cmd->add_option("--mu0", solve_flags.mu0,
                        "initial mu: \"ls\" (least-squares) or a number");
  solve_cmd->add_option("--v0", solve_flags.v0,
                        "\"zero\" or a JSON array file of length m");
  solve_cmd->add_option("--trace", solve_flags.trace,
                        "write per-iteration trace CSV to this path");
  solve_cmd->add_flag("--json", solve_flags.json, "machine-readable report");
  solve_cmd->add_option("--theta", solve_flags.theta,
                        "shortstep theta in (0,1/2] (default 0.5)");
  solve_cmd->add_option("--eps", solve_flags.eps,
                        "shortstep epsilon in (0,q_inverse(theta)) "
                        "(default 0.25)");

  BenchFlags bench_flags;
  CLI::App* bench_cmd = app.add_subcommand(
      "bench", "Mean iteration counts over random instances");
  bench_cmd->add_option("--n", bench_flags.n, "number of variables");
  bench_cmd->add_option("--m", bench_flags.m, "number of inequalities");
  bench_cmd->add_option("--rank", bench_flags.rank, "rank of W (rows of R)");
  bench_cmd->add_option("--instances", bench_flags.instances,
                        "instances per row (default 30)");
  bench_cmd->add_option("--seed", bench_flags.seed, "base seed");
  bench_cmd->add_option("--algos", bench_flags.algos,
                        "comma-separated algorithm list");
  bench_cmd->add_option("--mu-f", bench_flags.mu_f, "target mu");
  bench_cmd->add_option("--beta", bench_flags.beta, "step-size parameter");
  bench_cmd->add_option("--format", bench_flags.format, "csv|md")
      ->check(CLI::IsMember({"csv", "md"}));
  bench_cmd->add_option("--out", bench_flags.out,
                        "write the table here instead of stdout");
  bench_cmd->add_option("--dump-instances", bench_flags.dump_dir,
                        "write every generated instance to this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (solve_cmd->parsed()) {
      return run_solve(solve_flags);
    }
    return run_bench_cmd(bench_flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
