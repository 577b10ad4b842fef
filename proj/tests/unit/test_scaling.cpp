#include <doctest.h>

#include <cmath>
#include <limits>

#include "gsteady/error.hpp"
#include "gsteady/scaling.hpp"

using namespace gsteady;

TEST_CASE("lambda and mu") {
  const auto p = lambda_from_mu(1e-2, 0.2);
  CHECK(p.lambda == doctest::Approx(std::pow(1e-2, 1.0 / 3.2)));
  CHECK(mu_from_lambda(p.lambda, 0.2).mu == doctest::Approx(1e-2));
  CHECK(mu_from_lambda(0.05, 0.2).mu == doctest::Approx(std::pow(0.05, 3.2)));
  CHECK_THROWS_AS(lambda_from_mu(0.0, 0.2), InputError);
  CHECK_THROWS_AS(mu_from_lambda(1.5, 0.2), InputError);
}

TEST_CASE("rescaled problem and ensemble") {
  EngineConfig engine;
  engine.mu = 123.0;
  const auto prob = rescaled_problem(RestitutionModel::viscoelastic(2.0), engine, 0.25);
  CHECK(prob.engine.mu == doctest::Approx(std::pow(0.25, 0.2)));
  CHECK(prob.model(4.0) == doctest::Approx(RestitutionModel::viscoelastic(2.0)(1.0)));

  Ensemble e({{2, 0, 0}, {-2, 4, 0}}, 3.0);
  const Ensemble r = rescale_ensemble(e, 0.5);
  CHECK(r.velocities()[1].y == 8.0);
  CHECK(r.time() == 3.0);
}

TEST_CASE("replica statistics and z scores") {
  const auto s = replica_stats({1.0, 2.0, 3.0, 4.0});
  CHECK(s.mean == 2.5);
  CHECK(s.se == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(two_sample_z({1.0, 0.3}, {1.6, 0.4}) == doctest::Approx(-1.2));
  CHECK(two_sample_z({1.0, 0.0}, {1.0, 0.0}) == 0.0);
  CHECK(two_sample_z({2.0, 0.0}, {1.0, 0.0}) == std::numeric_limits<double>::infinity());
}

TEST_CASE("line fit recovers slope and intercept") {
  const auto f = fit_line({0.0, 1.0, 2.0, 3.0}, {1.0, 3.0, 5.0, 7.0});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.se == doctest::Approx(0.0));
  const auto g = fit_line({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  CHECK(g.slope == doctest::Approx(0.0));
  CHECK(g.se > 0.0);
  CHECK_THROWS_AS(fit_line({1.0, 1.0}, {0.0, 2.0}), InputError);
}

TEST_CASE("scaling equivalence at lambda one is exact in law") {
  EngineConfig engine;
  engine.n = 1500;
  engine.dt = 0.03;
  engine.seed = 5;
  RunConfig run;
  run.max_steps = 2000;
  run.window = 20;
  run.burn_in = 20;
  run.sample_every = 5;
  run.diss_pairs = 500;
  run.tol = 0.1;
  const auto eq = scaling_equivalence_test(engine, run, RestitutionModel::power_law(1.0, 0.2),
                                           {InitKind::Maxwellian, 1.5}, 1.0, {1, 2, 3});
  CHECK(eq.replicas == 3);
  CHECK(eq.physical_converged);
  CHECK(eq.rescaled_converged);
  CHECK(eq.max_abs_z() < 4.0);
  CHECK(eq.physical[0].mean == doctest::Approx(eq.rescaled[0].mean).epsilon(0.1));
}
