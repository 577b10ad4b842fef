#include <doctest.h>

#include <cmath>

#include "gsteady/dissipation.hpp"
#include "gsteady/dsmc.hpp"
#include "gsteady/error.hpp"
#include "gsteady/observables.hpp"
#include "gsteady/scaling.hpp"

using namespace gsteady;

namespace {

EngineConfig small_engine(std::size_t n, double mu) {
  EngineConfig c;
  c.n = n;
  c.mu = mu;
  c.dt = 0.03;
  c.seed = 77;
  return c;
}

}  // namespace

TEST_CASE("config validation names the key") {
  EngineConfig c;
  c.umax_factor = 0.5;
  try {
    c.validate();
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.key() == "engine.umax_factor");
  }
  c = EngineConfig{};
  c.dt = -1.0;
  CHECK_THROWS_AS(c.validate(), ConfigError);
  RunConfig r;
  r.window = 1;
  CHECK_THROWS_AS(r.validate(), ConfigError);
}

TEST_CASE("steps are deterministic and keep zero momentum") {
  const auto model = RestitutionModel::power_law(1.0, 0.2);
  const auto cfg = small_engine(3000, 0.5);
  Ensemble a = make_initial({InitKind::Maxwellian, 1.0}, cfg.n, 1);
  Ensemble b = a;
  for (int k = 0; k < 40; ++k) {
    step(a, cfg, model);
    step(b, cfg, model);
    const double rms = std::sqrt(a.mean_square_speed());
    CHECK(norm(a.mean_velocity()) <= 1e-12 * rms);
  }
  CHECK(a.collisions() > 0);
  CHECK(a.collisions() == b.collisions());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a.velocities()[i].x == b.velocities()[i].x);
    REQUIRE(a.velocities()[i].y == b.velocities()[i].y);
    REQUIRE(a.velocities()[i].z == b.velocities()[i].z);
  }

  auto other = cfg;
  other.seed = 78;
  Ensemble c = make_initial({InitKind::Maxwellian, 1.0}, cfg.n, 1);
  step(c, other, model);
  Ensemble d = make_initial({InitKind::Maxwellian, 1.0}, cfg.n, 1);
  step(d, cfg, model);
  CHECK(c.velocities()[0].x != d.velocities()[0].x);
}

TEST_CASE("elastic collisions conserve energy") {
  auto cfg = small_engine(5000, 0.0);
  Ensemble e = make_initial({InitKind::Bimodal, 1.0}, cfg.n, 2);
  const double e0 = e.mean_square_speed();
  for (int k = 0; k < 200; ++k) {
    const auto s = step(e, cfg, RestitutionModel::elastic());
    CHECK(s.accepted <= s.candidates);
  }
  CHECK(std::abs(e.mean_square_speed() - e0) <= 1e-10 * e0);
}

TEST_CASE("energy ledger closes exactly") {
  RunConfig run;
  run.max_steps = 400;
  run.window = 10;
  run.burn_in = 5;
  run.sample_every = 10;
  run.diss_pairs = 2000;
  const auto result =
      run_to_steady(small_engine(4000, 0.8), run, RestitutionModel::viscoelastic(1.0), {InitKind::Bimodal, 2.0});
  const double change = result.ensemble.mean_square_speed() - result.initial_energy;
  CHECK(result.ledger.bath > 0.0);
  CHECK(result.ledger.loss > 0.0);
  CHECK(std::abs(change - result.ledger.net()) <= 1e-8 * result.initial_energy);
}

TEST_CASE("bath alone grows m1 at rate 6 mu") {
  auto cfg = small_engine(10000, 0.5);
  cfg.collisions = false;
  cfg.recenter = false;
  cfg.dt = 0.01;
  Ensemble e = make_initial({InitKind::Maxwellian, 1.0}, cfg.n, 3);
  const auto start = e.velocities();
  for (int k = 0; k < 1000; ++k) {
    const auto s = step(e, cfg, RestitutionModel::power_law(1.0, 0.2));
    CHECK(s.candidates == 0);
  }
  const double t = e.time();
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const double d = norm2(e.velocities()[i]) - norm2(start[i]);
    sum += d;
    sum2 += d * d;
  }
  const double n = static_cast<double>(e.size());
  const double mean = sum / n;
  const double se = std::sqrt((sum2 / n - mean * mean) / n);
  CHECK(std::abs(mean / t - 6.0 * cfg.mu) <= 3.0 * se / t);
}

TEST_CASE("inelastic gas without a bath cools and never settles") {
  RunConfig run;
  run.max_steps = 600;
  run.window = 20;
  run.burn_in = 5;
  run.sample_every = 5;
  run.diss_pairs = 1000;
  const auto result =
      run_to_steady(small_engine(2000, 0.0), run, RestitutionModel::constant(0.8), {InitKind::Maxwellian, 1.0});
  CHECK_FALSE(result.report.converged);
  CHECK(result.report.stop_reason == "max_steps reached");
  CHECK(result.series.back().m1 < result.series.front().m1);
  // Window averages of consecutive blocks decrease.
  double prev = 1e300;
  for (std::size_t start = 0; start + 20 <= result.series.size(); start += 20) {
    double avg = 0.0;
    for (std::size_t k = start; k < start + 20; ++k) avg += result.series[k].m1;
    CHECK(avg < prev);
    prev = avg;
  }
}

TEST_CASE("elastic run is steady at once") {
  RunConfig run;
  run.window = 10;
  run.burn_in = 2;
  run.sample_every = 2;
  run.diss_pairs = 500;
  const auto result =
      run_to_steady(small_engine(1000, 0.0), run, RestitutionModel::elastic(), {InitKind::UniformBall, 0.6});
  CHECK(result.report.converged);
  CHECK(result.report.temperature == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(result.report.steps == 24);
  CHECK(result.report.diss_estimate == 0.0);
}

TEST_CASE("too large a step is reported, not thrown") {
  auto cfg = small_engine(1000, 1.0);
  cfg.dt = 0.5;
  RunConfig run;
  run.max_steps = 100;
  run.window = 5;
  run.burn_in = 1;
  const auto result = run_to_steady(cfg, run, RestitutionModel::constant(0.5), {InitKind::Maxwellian, 1.0});
  CHECK_FALSE(result.report.converged);
  CHECK(result.report.stop_reason.find("engine.dt") != std::string::npos);

  Ensemble e = make_initial({InitKind::Maxwellian, 1.0}, 1000, 1);
  CHECK_THROWS_AS(step(e, cfg, RestitutionModel::constant(0.5)), StepSizeError);
  Ensemble wrong = make_initial({InitKind::Maxwellian, 1.0}, 10, 1);
  CHECK_THROWS_AS(step(wrong, cfg, RestitutionModel::constant(0.5)), InputError);
}

TEST_CASE("rescaled problem settles near the maxwellian closure temperature") {
  const double lambda = 0.4;
  const auto base = RestitutionModel::power_law(1.0, 0.2);
  const auto problem = rescaled_problem(base, small_engine(5000, 0.0), lambda);
  CHECK(problem.engine.mu == doctest::Approx(std::pow(lambda, 0.2)));

  const double predicted = closure_temperature(DissipationSpec(problem.model), problem.engine.mu);
  CHECK(predicted == doctest::Approx(2.0281141309641429).epsilon(1e-9));

  RunConfig run;
  run.max_steps = 5000;
  run.window = 40;
  run.burn_in = 40;
  run.sample_every = 5;
  run.diss_pairs = 5000;
  run.tol = 0.05;
  const auto result = run_to_steady(problem.engine, run, problem.model, {InitKind::Maxwellian, 2.0});
  CHECK(result.report.converged);
  CHECK(result.report.temperature == doctest::Approx(predicted).epsilon(0.15));
  CHECK(result.report.accept_ratio > 0.05);
  CHECK(result.report.accept_ratio <= 1.0);
}
