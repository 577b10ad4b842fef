#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <utility>

namespace gsteady::rng {

/// Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
/// The output depends only on (counter, key), which lets every particle and
/// every step own an independent, reproducible stream.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter apply(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
             static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
             static_cast<std::uint32_t>(p0)};
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Purpose tags keep the streams of different substeps disjoint.
enum class Stream : std::uint32_t {
  Bath = 1,
  Collision = 2,
  Init = 3,
  PairSampling = 4,
  Verification = 5,
};

constexpr Philox4x32::Key key_from_seed(std::uint64_t seed) noexcept {
  return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

/// 53-bit uniform in [0, 1).
constexpr double to_unit_open_right(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// 53-bit uniform in (0, 1].
constexpr double to_unit_open_left(std::uint64_t bits) noexcept {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

/// Box-Muller transform of two uniform words into two standard normals.
inline std::pair<double, double> box_muller(std::uint64_t a, std::uint64_t b) noexcept {
  const double radius = std::sqrt(-2.0 * std::log(to_unit_open_left(a)));
  const double angle = 2.0 * std::numbers::pi * to_unit_open_right(b);
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

/// Sequential uniform random bit generator over one Philox substream,
/// addressed by (seed, purpose, step, index). Satisfies UniformRandomBitGenerator.
class CounterStream {
 public:
  using result_type = std::uint64_t;

  CounterStream(std::uint64_t seed, Stream purpose, std::uint64_t step, std::uint32_t index = 0) noexcept
      : key_(key_from_seed(seed)),
        ctr_{0u, index, static_cast<std::uint32_t>(step),
             (static_cast<std::uint32_t>(purpose) << 24) ^ static_cast<std::uint32_t>(step >> 32)} {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    if (pos_ == 2) {
      refill();
    }
    return buffer_[pos_++];
  }

  double uniform() noexcept { return to_unit_open_right((*this)()); }

  double normal() noexcept {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const std::uint64_t a = (*this)();
    const std::uint64_t b = (*this)();
    const auto [n0, n1] = box_muller(a, b);
    spare_ = n1;
    has_spare_ = true;
    return n0;
  }

 private:
  void refill() noexcept {
    const auto out = Philox4x32::apply(ctr_, key_);
    ++ctr_[0];
    buffer_[0] = (std::uint64_t{out[0]} << 32) | out[1];
    buffer_[1] = (std::uint64_t{out[2]} << 32) | out[3];
    pos_ = 0;
  }

  Philox4x32::Key key_;
  Philox4x32::Counter ctr_;
  std::array<std::uint64_t, 2> buffer_{};
  int pos_ = 2;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace gsteady::rng
