#include <doctest.h>

#include <cmath>
#include <set>

#include "gsteady/rng.hpp"

using gsteady::rng::CounterStream;
using gsteady::rng::Philox4x32;
using gsteady::rng::Stream;

TEST_CASE("philox known-answer vectors") {
  // Reference outputs of Philox4x32-10 from the Random123 distribution.
  using C = Philox4x32::Counter;
  using K = Philox4x32::Key;
  CHECK(Philox4x32::apply(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(Philox4x32::apply(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, K{0xffffffffu, 0xffffffffu}) ==
        C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(Philox4x32::apply(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, K{0xa4093822u, 0x299f31d0u}) ==
        C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("streams are reproducible and disjoint") {
  CounterStream a(42, Stream::Bath, 7, 3);
  CounterStream b(42, Stream::Bath, 7, 3);
  for (int i = 0; i < 100; ++i) {
    CHECK(a() == b());
  }

  std::set<std::uint64_t> first;
  for (auto purpose : {Stream::Bath, Stream::Collision, Stream::Init}) {
    for (std::uint64_t step : {0ull, 1ull, (1ull << 32)}) {
      for (std::uint32_t index : {0u, 1u}) {
        for (std::uint64_t seed : {1ull, 2ull}) {
          CounterStream s(seed, purpose, step, index);
          first.insert(s());
        }
      }
    }
  }
  CHECK(first.size() == 3 * 3 * 2 * 2);
}

TEST_CASE("uniform and normal draws have the right first moments") {
  CounterStream s(9, Stream::Verification, 0);
  const int n = 200000;
  double su = 0.0, sn = 0.0, sn2 = 0.0;
  double umin = 1.0, umax = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = s.uniform();
    umin = std::min(umin, u);
    umax = std::max(umax, u);
    su += u;
    const double z = s.normal();
    sn += z;
    sn2 += z * z;
  }
  CHECK(umin >= 0.0);
  CHECK(umax < 1.0);
  CHECK(su / n == doctest::Approx(0.5).epsilon(0.005));
  CHECK(std::abs(sn / n) < 5.0 / std::sqrt(n));
  CHECK(sn2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("unit conversions stay inside their intervals") {
  using namespace gsteady::rng;
  CHECK(to_unit_open_right(0) == 0.0);
  CHECK(to_unit_open_right(~0ull) < 1.0);
  CHECK(to_unit_open_left(0) > 0.0);
  CHECK(to_unit_open_left(~0ull) == 1.0);
}
