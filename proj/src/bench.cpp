#include "logqp/bench.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace logqp {

namespace {

int resolve_threads(int requested) {
  if (requested > 0) {
    return requested;
  }
  if (const char* env = std::getenv("LOGQP_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) {
      return parsed;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

struct RunOutcome {
  SolveStatus status = SolveStatus::NumericalFailure;
  long iterations = 0;
};

std::string format_mean(double mean) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", mean);
  return buf;
}

}  // namespace

double default_mu0(const QPInstance& qp, const Eigen::VectorXd& v0,
                   double mu_f) {
  DirectionDecomposition dd = decompose_direction(qp, v0, 1.0, 0.25);
  const std::optional<double> ls = least_squares_mu(dd);
  if (ls && *ls > mu_f) {
    return *ls;
  }
  return 1.0 > mu_f ? 1.0 : 2.0 * mu_f;
}

std::vector<BenchRow> run_bench(const BenchConfig& cfg) {
  if (cfg.instances <= 0) {
    throw std::invalid_argument("run_bench: instances must be positive");
  }
  if (cfg.algos.empty()) {
    throw std::invalid_argument("run_bench: no algorithms requested");
  }

  const int count = cfg.instances;
  const std::size_t n_algos = cfg.algos.size();
  // outcomes[i][a]: instance i under algorithm a.
  std::vector<std::vector<RunOutcome>> outcomes(
      count, std::vector<RunOutcome>(n_algos));

  if (!cfg.dump_dir.empty()) {
    std::filesystem::create_directories(cfg.dump_dir);
  }

  std::mutex report_mutex;
  std::atomic<int> next{0};
  std::string sweep_error;  // first I/O or callback error, rethrown after join

  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) {
        return;
      }
      GeneratorSpec spec{cfg.n, cfg.m, cfg.rank, cfg.seed_base + i};
      QPInstance qp;
      try {
        qp = generate_random_qp(spec);
      } catch (const std::exception&) {
        // Generation failure counts against every algorithm of this seed.
        continue;
      }
      if (!cfg.dump_dir.empty()) {
        std::ostringstream name;
        name << cfg.dump_dir << "/qp_n" << cfg.n << "_m" << cfg.m << "_r"
             << cfg.rank << "_seed" << spec.seed << ".json";
        std::lock_guard<std::mutex> lock(report_mutex);
        try {
          write_qp(qp, name.str());
        } catch (const std::exception& e) {
          if (sweep_error.empty()) {
            sweep_error = e.what();
          }
          return;
        }
      }

      const Eigen::VectorXd v0 = Eigen::VectorXd::Zero(qp.m());
      double mu0;
      try {
        mu0 = default_mu0(qp, v0, cfg.mu_f);
      } catch (const std::exception&) {
        continue;
      }

      for (std::size_t a = 0; a < n_algos; ++a) {
        SolverConfig solver_cfg;
        solver_cfg.mu_f = cfg.mu_f;
        solver_cfg.beta = cfg.beta;
        solver_cfg.algorithm = cfg.algos[a];
        SolveReport report = solve(qp, v0, mu0, solver_cfg);
        outcomes[i][a] = {report.status, report.newton_steps};
        if (cfg.on_report) {
          std::lock_guard<std::mutex> lock(report_mutex);
          try {
            cfg.on_report(qp, cfg.algos[a], report);
          } catch (const std::exception& e) {
            if (sweep_error.empty()) {
              sweep_error = e.what();
            }
            return;
          }
        }
      }
    }
  };

  const int threads = std::min(resolve_threads(cfg.threads), count);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  if (!sweep_error.empty()) {
    throw std::runtime_error("run_bench: " + sweep_error);
  }

  std::vector<BenchRow> rows;
  rows.reserve(n_algos);
  for (std::size_t a = 0; a < n_algos; ++a) {
    BenchRow row;
    row.n = cfg.n;
    row.m = cfg.m;
    row.rank_w = cfg.rank;
    row.algo = cfg.algos[a];
    row.instances = count;
    row.seed_base = cfg.seed_base;

    long solved = 0;
    long total_iters = 0;
    for (int i = 0; i < count; ++i) {
      if (outcomes[i][a].status == SolveStatus::Solved) {
        ++solved;
        total_iters += outcomes[i][a].iterations;
      } else {
        ++row.failures;
      }
    }
    row.mean_iterations =
        solved > 0 ? static_cast<double>(total_iters) / solved
                   : std::numeric_limits<double>::quiet_NaN();
    rows.push_back(row);
  }
  return rows;
}

std::string csv_header() {
  return "n,m,rank_w,algo,mean_iters,failures,instances,seed";
}

std::string to_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const BenchRow& r : rows) {
    out << r.n << ',' << r.m << ',' << r.rank_w << ',' << to_string(r.algo)
        << ',' << format_mean(r.mean_iterations) << ',' << r.failures << ','
        << r.instances << ',' << r.seed_base << '\n';
  }
  return out.str();
}

std::string to_markdown(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "| n | m | rank_w | algo | mean_iters | failures | instances | seed "
         "|\n";
  out << "|--:|--:|-------:|------|-----------:|---------:|----------:|-----:"
         "|\n";
  for (const BenchRow& r : rows) {
    out << "| " << r.n << " | " << r.m << " | " << r.rank_w << " | "
        << to_string(r.algo) << " | " << format_mean(r.mean_iterations)
        << " | " << r.failures << " | " << r.instances << " | " << r.seed_base
        << " |\n";
  }
  return out.str();
}

}  // namespace logqp
