#include <doctest.h>

#include <cmath>

#include "gsteady/error.hpp"
#include "gsteady/restitution.hpp"

using namespace gsteady;

TEST_CASE("constant law") {
  const auto m = RestitutionModel::constant(0.3);
  CHECK(m(0.0) == 0.3);
  CHECK(m(17.0) == 0.3);
  CHECK(m.a() == doctest::Approx(0.7));
  CHECK(m.gamma() == 0.0);
  CHECK(RestitutionModel::elastic().is_elastic());
  CHECK_FALSE(m.is_elastic());
  CHECK_THROWS_AS(RestitutionModel::constant(0.0), InputError);
  CHECK_THROWS_AS(RestitutionModel::constant(1.2), InputError);
}

TEST_CASE("power law") {
  const auto m = RestitutionModel::power_law(1.0, 0.5);
  CHECK(m(0.0) == 1.0);
  CHECK(m(4.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(m.gamma_bar() == 1.0);
  CHECK_THROWS_AS(RestitutionModel::power_law(-1.0, 0.5), InputError);
  CHECK_THROWS_AS(RestitutionModel::power_law(1.0, 1.5), InputError);
  CHECK_THROWS_AS(m(-1.0), InputError);
  CHECK_THROWS_AS(m(std::nan("")), InputError);
}

TEST_CASE("viscoelastic law against reference roots") {
  const auto m = RestitutionModel::viscoelastic(1.0);
  CHECK(m(0.0) == 1.0);
  CHECK(m(1.0) == doctest::Approx(0.41232019714226182).epsilon(1e-13));
  CHECK(m.beta(1.0) == doctest::Approx(0.70616009857113091).epsilon(1e-13));
  CHECK(RestitutionModel::viscoelastic(2.0)(32.0) == doctest::Approx(0.085484117907936724).epsilon(1e-12));
  CHECK(m.gamma() == doctest::Approx(0.2));

  for (double c : {0.0, 1e-9, 0.3, 1.0, 10.0, 1e4}) {
    const double e = solve_viscoelastic(c);
    CHECK(e + c * std::pow(e, 0.6) == doctest::Approx(1.0).epsilon(1e-13));
  }
}

TEST_CASE("one minus e squared keeps precision near elastic") {
  const auto m = RestitutionModel::power_law(1.0, 0.2);
  const double r = 1e-40;
  const double x = std::pow(r, 0.2);
  CHECK(m.one_minus_e_squared(r) == doctest::Approx(x * (2.0 + x) / ((1.0 + x) * (1.0 + x))).epsilon(1e-14));
  CHECK(m.one_minus_e_squared(r) > 0.0);
}

TEST_CASE("rescaling composes") {
  const auto m = RestitutionModel::power_law(0.7, 0.3);
  const auto r1 = m.rescaled(0.5).rescaled(0.2);
  const auto r2 = m.rescaled(0.1);
  CHECK(r1.lambda_scale() == doctest::Approx(0.1));
  for (double r : {0.0, 0.3, 2.0, 50.0}) {
    CHECK(r1(r) == doctest::Approx(r2(r)).epsilon(1e-15));
    CHECK(r2(r) == doctest::Approx(m(0.1 * r)).epsilon(1e-15));
  }
  CHECK(r1.base().lambda_scale() == 1.0);
  CHECK_THROWS_AS(m.rescaled(0.0), InputError);
  CHECK_THROWS_AS(m.rescaled(1.5), InputError);
}

TEST_CASE("theta map increases and ell_gamma is bounded by a") {
  const auto grid = log_grid(1e-8, 1e3, 200);
  CHECK(grid.front() == doctest::Approx(1e-8));
  CHECK(grid.back() == doctest::Approx(1e3));
  for (const auto& m : {RestitutionModel::power_law(1.0, 0.2), RestitutionModel::viscoelastic(1.0)}) {
    for (std::size_t i = 1; i < grid.size(); ++i) {
      CHECK(m(grid[i]) <= m(grid[i - 1]));
      CHECK(m.theta_map(grid[i]) > m.theta_map(grid[i - 1]));
    }
    CHECK(ell_gamma(m, grid) <= m.a() * (1.0 + 1e-12));
    // The supremum is approached as r -> 0.
    CHECK(ell_gamma(m, log_grid(1e-60, 1.0, 50)) > 0.99 * m.a());
  }
  CHECK_THROWS_AS(log_grid(1.0, 0.5, 4), InputError);
}

TEST_CASE("kind names round-trip") {
  for (auto k : {RestitutionKind::Constant, RestitutionKind::PowerLaw, RestitutionKind::ViscoelasticImplicit}) {
    CHECK(restitution_kind_from_string(to_string(k)) == k);
  }
  CHECK_THROWS_AS(restitution_kind_from_string("plastic"), InputError);
}
