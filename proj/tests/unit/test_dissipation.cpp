#include <doctest.h>

#include <cmath>

#include "gsteady/dissipation.hpp"
#include "gsteady/ensemble.hpp"
#include "gsteady/error.hpp"

using namespace gsteady;

TEST_CASE("psi of the constant law is closed form") {
  const DissipationSpec spec(RestitutionModel::constant(0.5));
  for (double r : {0.0, 0.25, 4.0, 100.0}) {
    CHECK(spec.psi(r) == doctest::Approx(std::pow(r, 1.5) * 0.75 / 8.0).epsilon(1e-13));
  }
  CHECK(DissipationSpec(RestitutionModel::elastic()).psi(9.0) == 0.0);
}

TEST_CASE("psi against reference quadrature") {
  const DissipationSpec pl(RestitutionModel::power_law(1.0, 0.2));
  CHECK(pl.psi(1.0) == doctest::Approx(0.092150574235425106).epsilon(1e-12));
  CHECK(pl.psi(4.0) == doctest::Approx(0.77148857507595412).epsilon(1e-12));
  const DissipationSpec ve(RestitutionModel::viscoelastic(1.0));
  CHECK(ve.psi(2.0) == doctest::Approx(0.2951214218061401).epsilon(1e-11));
  CHECK_THROWS_AS(pl.psi(-1.0), InputError);
}

TEST_CASE("small-r behaviour approaches zeta_zero") {
  const DissipationSpec pl(RestitutionModel::power_law(1.0, 0.2));
  CHECK(zeta_zero(1.0, 0.2, 4.0) == doctest::Approx(2.1879968666610193).epsilon(1e-14));
  CHECK(pl.psi(1e-6) / zeta_zero(1.0, 0.2, 1e-6) == doctest::Approx(0.728711470861654).epsilon(1e-10));
  CHECK(pl.psi(1e-40) / zeta_zero(1.0, 0.2, 1e-40) == doctest::Approx(0.99985683644050868).epsilon(1e-10));
}

TEST_CASE("zeta_lambda converges to zeta_zero from below") {
  const DissipationSpec pl(RestitutionModel::power_law(1.0, 0.2));
  CHECK(pl.zeta_lambda(0.5, 1.0) == doctest::Approx(0.10060543810967523).epsilon(1e-12));
  CHECK(pl.zeta_lambda(0.1, 1.0) == doctest::Approx(0.1207347758734579).epsilon(1e-12));
  CHECK(pl.zeta_lambda(0.01, 1.0) == doctest::Approx(0.14882073696745932).epsilon(1e-12));
  double prev = 0.0;
  for (double lambda : {0.5, 0.1, 0.01, 1e-4, 1e-8}) {
    const double z = pl.zeta_lambda(lambda, 1.0);
    CHECK(z > prev);
    CHECK(z < zeta_zero(1.0, 0.2, 1.0));
    prev = z;
  }
}

TEST_CASE("theta oracle and printed formula") {
  const auto t = theta_limit(1.0, 0.2);
  CHECK(t.theta == doctest::Approx(1.0649041657330353).epsilon(1e-13));
  CHECK(t.theta_paper_formula == doctest::Approx(1.1120515010727464).epsilon(1e-13));
  CHECK(theta_limit(1.0, 0.5).theta == doctest::Approx(0.89877604497505703).epsilon(1e-13));
  CHECK(theta_limit(1.0, 1.0).theta == doctest::Approx(std::sqrt(0.5)).epsilon(1e-13));
  // Theta scales as a^{-2/(3+gamma)}.
  CHECK(theta_limit(2.0, 0.2).theta == doctest::Approx(t.theta * std::pow(2.0, -2.0 / 3.2)).epsilon(1e-13));
}

TEST_CASE("maxwellian dissipation of the limiting law reproduces theta") {
  // With zeta_0 the balance temperature is exactly Theta.
  const auto t = theta_limit(1.0, 0.2);
  const DissipationSpec tiny(RestitutionModel::power_law(1.0, 0.2).rescaled(1e-40));
  const double mu = std::pow(1e-40, 0.2);
  CHECK(closure_temperature(tiny, mu) == doctest::Approx(t.theta).epsilon(1e-6));
  CHECK_THROWS_AS(closure_temperature(DissipationSpec(RestitutionModel::elastic()), 1.0), DomainError);

  const DissipationSpec c(RestitutionModel::constant(0.5));
  // V - V* ~ N(0, 2T I), so E|V - V*|^3 = (2T)^{3/2} E chi_3^3.
  const double T = 0.7;
  const double e3 = 8.0 * std::sqrt(2.0 / std::numbers::pi) * std::pow(2.0 * T, 1.5);
  CHECK(maxwellian_dissipation(c, T) == doctest::Approx(e3 * 0.75 / 8.0).epsilon(1e-12));
}

TEST_CASE("pair functional: exact and sampled") {
  std::vector<Vec3> v{{1, 0, 0}, {-1, 0, 0}, {0, 2, 0}};
  const Ensemble ens(v);
  auto square = [](double r2) { return r2; };
  // sum over ordered i != j of |v_i - v_j|^2 = 2 (4 + 5 + 5) = 28, divided by N^2 = 9.
  CHECK(dissipation_functional(ens, square) == doctest::Approx(28.0 / 9.0));

  const Ensemble big = make_initial({InitKind::Maxwellian, 1.0}, 5000, 3);
  PairEstimatorOptions sampled;
  sampled.exact_max_n = 100;
  sampled.sampled_pairs = 400000;
  // E|V - V*|^2 = 6T for the empirical measure (times (N - 1)/N).
  CHECK(dissipation_functional(big, square, sampled) == doctest::Approx(6.0).epsilon(0.01));
}
