#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "logqp/instances.hpp"
#include "logqp/solvers.hpp"

namespace logqp {

/// One benchmark sweep: `instances` random QPs of a single (n, m, rank)
/// shape, each solved by every requested algorithm from v0 = 0 and
/// μ0 = least-squares μ, so the per-algorithm iteration counts are paired on
/// identical instances.
struct BenchConfig {
  int n = 100;
  int m = 200;
  int rank = 0;
  int instances = 30;
  std::uint64_t seed_base = 0;
  std::vector<Algorithm> algos{Algorithm::LogDomainLong,
                               Algorithm::DualBarrier,
                               Algorithm::PrimalBarrier};
  double mu_f = 1e-3;
  double beta = 0.5;
  /// 0 = use LOGQP_THREADS, falling back to the hardware thread count.
  int threads = 0;
  /// When nonempty, every generated instance is written here as JSON.
  std::string dump_dir;
  /// Invoked for every finished solve (serialized; may run expensive checks).
  std::function<void(const QPInstance& qp, Algorithm algo,
                     const SolveReport& report)>
      on_report;
};

/// Aggregated result for one (config, algorithm) pair. mean_iterations is
/// the mean Newton-step count over the solved runs only (NaN if none
/// solved); failures counts the non-Solved runs.
struct BenchRow {
  int n = 0;
  int m = 0;
  int rank_w = 0;
  Algorithm algo = Algorithm::LogDomainLong;
  double mean_iterations = 0.0;
  int failures = 0;
  int instances = 0;
  std::uint64_t seed_base = 0;
};

/// Runs the sweep. Instance i uses seed seed_base + i. Instances may be
/// solved in parallel; aggregation is by instance index, so the result is
/// independent of scheduling.
std::vector<BenchRow> run_bench(const BenchConfig& cfg);

/// μ0 policy shared by the benchmark and the CLI: the least-squares μ at v0
/// when it exists and exceeds mu_f, otherwise 1 (or 2·mu_f when even 1 is
/// not above the target).
double default_mu0(const QPInstance& qp, const Eigen::VectorXd& v0,
                   double mu_f);

/// `n,m,rank_w,algo,mean_iters,failures,instances,seed`
std::string csv_header();
std::string to_csv(const std::vector<BenchRow>& rows);
std::string to_markdown(const std::vector<BenchRow>& rows);

}  // namespace logqp
