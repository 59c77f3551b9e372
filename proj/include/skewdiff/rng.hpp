#pragma once

#include <array>
#include <cstdint>

namespace skewdiff {

// Philox4x64-10 counter-based generator.  block() is a pure function of
// (counter, key), so any path or chunk can be generated independently.
struct Philox4x64 {
  static std::array<std::uint64_t, 4> block(std::array<std::uint64_t, 4> counter,
                                            std::array<std::uint64_t, 2> key);
};

// Maps a raw 64-bit word to (0, 1) using the top 53 bits, offset half a step
// so neither endpoint is reachable.
double uniform_from_bits(std::uint64_t word);

// Inverse standard normal CDF; domain (0, 1).
double standard_normal_quantile(double u);

// Stream of standard normals keyed by (seed, stream).  Streams are
// statistically independent across keys and reproducible regardless of how
// paths are divided among workers.
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream);
  double next();

 private:
  void refill();

  std::array<std::uint64_t, 2> key_;
  std::uint64_t block_index_ = 0;
  std::array<double, 4> buffer_{};
  int pos_ = 4;
};

}  // namespace skewdiff
