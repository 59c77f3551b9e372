#include "skewdiff/rng.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>
#include <stdexcept>

namespace skewdiff {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline std::uint64_t mulhilo(std::uint64_t a, std::uint64_t b,
                             std::uint64_t& hi) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  hi = static_cast<std::uint64_t>(p >> 64);
  return static_cast<std::uint64_t>(p);
}

}  // namespace

std::array<std::uint64_t, 4> Philox4x64::block(
    std::array<std::uint64_t, 4> counter, std::array<std::uint64_t, 2> key) {
  for (int round = 0;; ++round) {
    std::uint64_t hi0, hi1;
    const std::uint64_t lo0 = mulhilo(kMul0, counter[0], hi0);
    const std::uint64_t lo1 = mulhilo(kMul1, counter[2], hi1);
    counter = {hi1 ^ counter[1] ^ key[0], lo1, hi0 ^ counter[3] ^ key[1], lo0};
    if (round == 9) break;
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return counter;
}

double uniform_from_bits(std::uint64_t word) {
  const double u = (static_cast<double>(word >> 11) + 0.5) * 0x1.0p-53;
  // The top bin's midpoint 1 - 2^-54 is not representable and rounds up to
  // 1.0; clamp it to the largest double below one so the interval stays open.
  return u < 1.0 ? u : 0x1.fffffffffffffp-1;
}

double standard_normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw std::domain_error("standard_normal_quantile: u must lie in (0, 1)");
  }
  return -1.4142135623730951 * boost::math::erfc_inv(2.0 * u);
}

GaussianStream::GaussianStream(std::uint64_t seed, std::uint64_t stream)
    : key_{seed, stream} {}

void GaussianStream::refill() {
  const auto words = Philox4x64::block({block_index_, 0, 0, 0}, key_);
  for (int i = 0; i < 4; ++i) {
    buffer_[i] = standard_normal_quantile(uniform_from_bits(words[i]));
  }
  ++block_index_;
  pos_ = 0;
}

double GaussianStream::next() {
  if (pos_ == 4) refill();
  return buffer_[pos_++];
}

}  // namespace skewdiff
