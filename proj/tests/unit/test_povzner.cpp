#include <doctest.h>

#include <cmath>

#include "gsteady/error.hpp"
#include "gsteady/povzner.hpp"

using namespace gsteady;

TEST_CASE("constants of the power test functions") {
  const auto c2 = PovznerCase::power(2.0);
  CHECK(c2.A == 2.0);
  CHECK(c2.k == doctest::Approx(5.0 / 96.0));
  const auto c3 = PovznerCase::power(3.0);
  CHECK(c3.A == 4.0);
  CHECK(c3.k == doctest::Approx(5.0 / 192.0));
  CHECK_THROWS_AS(PovznerCase::power(0.5), InputError);
}

TEST_CASE("opposite pairs: sphere rule against the one-dimensional reduction") {
  const AngularQuadrature quad;
  const auto half = RestitutionModel::constant(0.5);
  CHECK(kernel_opposite_1d(1.0, 2.0, half) == doctest::Approx(-1.125).epsilon(1e-13));
  for (const auto& m : {RestitutionModel::power_law(1.0, 0.2), RestitutionModel::viscoelastic(1.0)}) {
    for (double s : {0.1, 1.0, 3.0}) {
      const Vec3 v{0.0, 0.0, s};
      const double k2d = angular_kernel(v, -v, 2.0, m, quad);
      CHECK(k2d == doctest::Approx(kernel_opposite_1d(s, 2.0, m)).epsilon(1e-8));
      CHECK(k2d < 0.0);
    }
  }
  CHECK(kernel_opposite_1d(1.0, 2.0, RestitutionModel::elastic()) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("margins and gain bound on a fixed pair") {
  const AngularQuadrature quad;
  const Vec3 v{0.3, -1.0, 0.2};
  const Vec3 vs{1.1, 0.4, -0.5};
  const double energy = norm2(v) + norm2(vs);
  for (double p : {2.0, 3.0}) {
    const auto c = PovznerCase::power(p);
    for (const auto& m : {RestitutionModel::constant(0.3), RestitutionModel::viscoelastic(1.0)}) {
      CHECK(check_inequality(v, vs, c, m, quad) >= 0.0);
      CHECK(angular_gain(v, vs, p, m, quad) <= gain_bound(energy, p) + 1e-12);
    }
  }
  // p = 2: int_0^1 [(E(3+s)/4)^2 + (E(1-s)/4)^2] ds = E^2 (37/3 + 1/3) / 16.
  CHECK(gain_bound(2.0, 2.0) == doctest::Approx(4.0 * (37.0 / 3.0 + 1.0 / 3.0) / 16.0));
}

TEST_CASE("small battery passes with a positive fitted constant") {
  const auto r = povzner_battery(RestitutionModel::power_law(1.0, 0.2), "power_law", 2.0, 300, 4, 50);
  CHECK(r.pairs == 300);
  CHECK(r.passed);
  CHECK(r.worst_margin >= -1e-9);
  CHECK(r.worst_gain_slack >= 0.0);
  CHECK(r.fitted_k >= r.printed_k);
}
