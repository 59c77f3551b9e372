#include "skewdiff/sde.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

namespace skewdiff {

namespace {

// Paths are grouped into fixed-size chunks whose partial sums are reduced in
// chunk order, so the estimate does not depend on the worker count.
constexpr std::int64_t kChunkPaths = 8192;

}  // namespace

std::int64_t step_count(double final_time, double delta_t) {
  if (!(final_time > 0.0)) {
    throw std::invalid_argument("final_time: must be positive");
  }
  if (!(delta_t > 0.0)) {
    throw std::invalid_argument("delta_t: must be positive");
  }
  const double ratio = final_time / delta_t;
  const std::int64_t steps = std::llround(ratio);
  if (steps < 1 || std::abs(ratio - static_cast<double>(steps)) > 1e-9 * ratio) {
    throw std::invalid_argument("delta_t: must divide final_time");
  }
  return steps;
}

int resolve_worker_count(int requested) {
  int workers = requested;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers <= 0) workers = 1;
  }
  if (const char* cap_text = std::getenv("SKEWDIFF_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(cap_text, &end, 10);
    if (end != cap_text && *end == '\0' && cap > 0) {
      workers = static_cast<int>(std::min<long>(workers, cap));
    }
  }
  return std::max(workers, 1);
}

McEstimate monte_carlo_estimate(const InterfaceProblem& p,
                                const SimConfig& cfg) {
  validate_problem(p);
  if (cfg.n_paths < 1) throw std::invalid_argument("n_paths: must be >= 1");
  step_count(p.final_time, cfg.delta_t);  // validates divisibility up front

  const SkewParameters sp = skew_parameters(p);
  const std::int64_t n_chunks = (cfg.n_paths + kChunkPaths - 1) / kChunkPaths;
  std::vector<double> sums(n_chunks, 0.0);
  std::vector<double> sq_sums(n_chunks, 0.0);

  const auto run_chunk = [&](std::int64_t chunk) {
    const std::int64_t first = chunk * kChunkPaths;
    const std::int64_t last = std::min(first + kChunkPaths, cfg.n_paths);
    double s = 0.0;
    double s2 = 0.0;
    for (std::int64_t path = first; path < last; ++path) {
      GaussianStream normals(cfg.seed, static_cast<std::uint64_t>(path));
      const double y =
          simulate_terminal(cfg, p.final_time, sp, p.lambda,
                            [&normals] { return normals.next(); });
      const double v = p.u0(y);
      s += v;
      s2 += v * v;
    }
    sums[chunk] = s;
    sq_sums[chunk] = s2;
  };

  const int workers = static_cast<int>(std::min<std::int64_t>(
      resolve_worker_count(cfg.n_workers), n_chunks));
  if (workers <= 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (;;) {
            const std::int64_t c = next.fetch_add(1);
            if (c >= n_chunks) break;
            run_chunk(c);
          }
        } catch (...) {
          const std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
  }

  double total = 0.0;
  double total_sq = 0.0;
  for (std::int64_t c = 0; c < n_chunks; ++c) {
    total += sums[c];
    total_sq += sq_sums[c];
  }

  const double n = static_cast<double>(cfg.n_paths);
  McEstimate est;
  est.mean = total / n;
  est.n_paths = cfg.n_paths;
  est.seed = cfg.seed;
  est.delta_t = cfg.delta_t;
  if (cfg.n_paths > 1) {
    const double var =
        std::max(0.0, (total_sq - n * est.mean * est.mean) / (n - 1.0));
    est.std_error = std::sqrt(var / n);
  }
  return est;
}

}  // namespace skewdiff
