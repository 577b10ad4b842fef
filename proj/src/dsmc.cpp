#include "gsteady/dsmc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "gsteady/dissipation.hpp"
#include "gsteady/error.hpp"
#include "gsteady/kinematics.hpp"
#include "gsteady/rng.hpp"

namespace gsteady {

namespace {

constexpr std::size_t kBlock = 4096;

void check(bool ok, const char* key, const char* message) {
  if (!ok) {
    throw ConfigError(key, std::string(key) + ": " + message);
  }
}

/// Gaussian kicks; returns the change of sum |v|^2. Block partial sums are
/// combined in index order so the result does not depend on the thread count.
double bath_substep(Ensemble& ensemble, const EngineConfig& config) {
  auto& v = ensemble.velocities();
  const std::size_t n = v.size();
  const double sd = std::sqrt(2.0 * config.mu * config.dt);
  const std::uint64_t step = ensemble.steps();
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  bool finite = true;

#pragma omp parallel for schedule(static) reduction(&& : finite)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t stop = std::min(n, (b + 1) * kBlock);
    double sum = 0.0;
    for (std::size_t i = b * kBlock; i < stop; ++i) {
      rng::CounterStream stream(config.seed, rng::Stream::Bath, step, static_cast<std::uint32_t>(i));
      const auto [g0, g1] = rng::box_muller(stream(), stream());
      const auto [g2, unused] = rng::box_muller(stream(), stream());
      (void)unused;
      const double before = norm2(v[i]);
      v[i] += sd * Vec3{g0, g1, g2};
      const double after = norm2(v[i]);
      finite = finite && std::isfinite(after);
      sum += after - before;
    }
    partial[b] = sum;
  }
  if (!finite) {
    throw NonFiniteVelocity("non-finite velocity after the bath substep (mu * dt too large?)");
  }
  double total = 0.0;
  for (const double p : partial) total += p;
  return total;
}

struct CollisionOutcome {
  std::uint64_t candidates = 0;
  std::uint64_t accepted = 0;
  double u_max = 0.0;
  double loss = 0.0;
};

CollisionOutcome collision_substep(Ensemble& ensemble, const EngineConfig& config,
                                   const RestitutionModel& model) {
  auto& v = ensemble.velocities();
  const std::size_t n = v.size();
  const double nd = static_cast<double>(n);
  CollisionOutcome out;

  double max_speed2 = 0.0;
  for (const auto& vi : v) max_speed2 = std::max(max_speed2, norm2(vi));
  out.u_max = config.umax_factor * 2.0 * std::sqrt(max_speed2);
  if (out.u_max == 0.0) {
    return out;
  }

  // Mean pair speed <= sqrt(2 m1), so dt sqrt(2 m1) bounds the expected
  // per-particle collision probability of the step.
  const double bound = config.dt * std::sqrt(2.0 * ensemble.mean_square_speed());
  if (bound > config.max_collision_fraction) {
    throw StepSizeError("per-particle collision probability bound " + std::to_string(bound) +
                        " exceeds " + std::to_string(config.max_collision_fraction) +
                        "; reduce engine.dt");
  }

  rng::CounterStream stream(config.seed, rng::Stream::Collision, ensemble.steps());
  const double mean = 0.5 * (nd - 1.0) * out.u_max * config.dt;
  std::poisson_distribution<std::uint64_t> poisson(mean);
  out.candidates = poisson(stream);

  for (std::uint64_t c = 0; c < out.candidates; ++c) {
    const auto i = std::min(n - 1, static_cast<std::size_t>(stream.uniform() * nd));
    auto j = std::min(n - 2, static_cast<std::size_t>(stream.uniform() * (nd - 1.0)));
    if (j >= i) ++j;
    const Vec3 u = v[i] - v[j];
    const double speed = norm(u);
    if (speed > out.u_max) {
      throw MajorantViolation("pair speed " + std::to_string(speed) + " exceeds majorant " +
                              std::to_string(out.u_max) + "; increase engine.umax_factor");
    }
    const double accept = stream.uniform();
    const double cos_theta = 2.0 * stream.uniform() - 1.0;
    const double phi = 2.0 * std::numbers::pi * stream.uniform();
    if (accept * out.u_max >= speed) {
      continue;
    }
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
    const Vec3 sigma{sin_theta * std::cos(phi), sin_theta * std::sin(phi), cos_theta};
    const double impact = impact_speed_sigma(u, sigma);
    const double e = model.eval(impact);
    const auto [vi, vj] = apply_sigma_map(v[i], v[j], sigma, 0.5 * (1.0 + e));
    v[i] = vi;
    v[j] = vj;
    out.loss += 0.5 * impact * impact * (1.0 - e) * (1.0 + e);
    ++out.accepted;
  }
  return out;
}

}  // namespace

void EngineConfig::validate() const {
  check(n >= 2, "engine.N", "need at least 2 particles");
  check(n < (std::size_t{1} << 32), "engine.N", "particle index must fit in 32 bits");
  check(dt > 0.0 && std::isfinite(dt), "engine.dt", "must be positive");
  check(mu >= 0.0 && std::isfinite(mu), "engine.mu", "must be non-negative");
  check(umax_factor >= 1.0, "engine.umax_factor", "must be >= 1");
  check(max_collision_fraction > 0.0 && max_collision_fraction <= 1.0, "engine.max_collision_fraction",
        "must lie in (0, 1]");
}

void RunConfig::validate() const {
  check(window >= 3, "run.window", "need at least 3 samples");
  check(sample_every >= 1, "run.sample_every", "must be >= 1");
  check(max_steps >= 1, "run.max_steps", "must be >= 1");
  check(tol > 0.0, "run.tol", "must be positive");
  check(diss_pairs >= 1, "run.diss_pairs", "must be >= 1");
  check(tail_rate >= 0.0, "run.tail_rate", "must be non-negative");
}

StepStats step(Ensemble& ensemble, const EngineConfig& config, const RestitutionModel& model) {
  config.validate();
  if (ensemble.size() != config.n) {
    throw InputError("ensemble size does not match engine.N");
  }
  const double nd = static_cast<double>(ensemble.size());
  StepStats stats;

  if (config.mu > 0.0) {
    stats.bath_energy = bath_substep(ensemble, config) / nd;
  }
  if (config.collisions) {
    const CollisionOutcome c = collision_substep(ensemble, config, model);
    stats.candidates = c.candidates;
    stats.accepted = c.accepted;
    stats.u_max = c.u_max;
    stats.collision_loss = c.loss / nd;
    ensemble.add_counts(c.candidates, c.accepted);
  }
  if (config.recenter) {
    const Vec3 mean = ensemble.mean_velocity();
    ensemble.subtract(mean);
    stats.recenter_energy = norm2(mean);
  }
  ensemble.advance(config.dt);
  return stats;
}

TimeSample sample_observables(const Ensemble& ensemble, const RestitutionModel& model,
                              const RunConfig& run, std::uint64_t seed) {
  TimeSample s;
  s.step = ensemble.steps();
  s.t = ensemble.time();
  double tail = 0.0;
  for (const auto& v : ensemble.velocities()) {
    const double r2 = norm2(v);
    const double r = std::sqrt(r2);
    s.m1 += r2;
    s.m3_2 += r2 * r;
    s.m2 += r2 * r2;
    s.m3 += r2 * r2 * r2;
    tail += std::exp(run.tail_rate * r * std::sqrt(r));
  }
  const double nd = static_cast<double>(ensemble.size());
  s.m1 /= nd;
  s.m3_2 /= nd;
  s.m2 /= nd;
  s.m3 /= nd;
  s.tail_value = tail / nd;

  const DissipationSpec spec(model);
  PairEstimatorOptions options;
  options.sampled_pairs = run.diss_pairs;
  options.exact_max_n = std::min<std::size_t>(2000, run.diss_pairs);
  options.seed = seed;
  options.stream_step = ensemble.steps();
  s.diss_estimate = dissipation_functional(ensemble, [&](double r2) { return spec.psi(r2); }, options);
  return s;
}

namespace {

/// Least-squares slope of y against x.
double ls_slope(const std::vector<TimeSample>& samples, std::size_t first) {
  const std::size_t count = samples.size() - first;
  double mt = 0.0;
  double my = 0.0;
  for (std::size_t k = first; k < samples.size(); ++k) {
    mt += samples[k].t;
    my += samples[k].m1;
  }
  mt /= static_cast<double>(count);
  my /= static_cast<double>(count);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t k = first; k < samples.size(); ++k) {
    const double dx = samples[k].t - mt;
    sxy += dx * (samples[k].m1 - my);
    sxx += dx * dx;
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

void summarise(SteadyReport& report, const std::vector<TimeSample>& series, std::size_t window) {
  const std::size_t count = std::min(window, series.size());
  const std::size_t first = series.size() - count;
  SteadyReport& r = report;
  r.m1 = r.m3_2 = r.m2 = r.m3 = r.diss_estimate = r.tail_value = r.accept_ratio = 0.0;
  for (std::size_t k = first; k < series.size(); ++k) {
    r.m1 += series[k].m1;
    r.m3_2 += series[k].m3_2;
    r.m2 += series[k].m2;
    r.m3 += series[k].m3;
    r.diss_estimate += series[k].diss_estimate;
    r.tail_value += series[k].tail_value;
    r.accept_ratio += series[k].accept_ratio;
  }
  const double c = static_cast<double>(count);
  r.m1 /= c;
  r.m3_2 /= c;
  r.m2 /= c;
  r.m3 /= c;
  r.diss_estimate /= c;
  r.tail_value /= c;
  r.accept_ratio /= c;
  r.temperature = r.m1 / 3.0;
  if (count >= 2) {
    const double span = series.back().t - series[first].t;
    r.relative_drift = std::abs(ls_slope(series, first)) * span / r.m1;
  }
}

}  // namespace

RunResult run_to_steady(const EngineConfig& engine, const RunConfig& run, const RestitutionModel& model,
                        Ensemble initial) {
  engine.validate();
  run.validate();
  RunResult result;
  result.ensemble = std::move(initial);
  Ensemble& ensemble = result.ensemble;
  result.initial_energy = ensemble.mean_square_speed();
  SteadyReport& report = result.report;
  report.six_mu = 6.0 * engine.mu;
  report.tail_rate = run.tail_rate;

  result.series.push_back(sample_observables(ensemble, model, run, engine.seed));
  std::uint64_t interval_candidates = 0;
  std::uint64_t interval_accepted = 0;
  bool low_acceptance_warned = false;

  for (std::size_t k = 1; k <= run.max_steps; ++k) {
    StepStats stats;
    try {
      stats = step(ensemble, engine, model);
    } catch (const StepSizeError& error) {
      report.stop_reason = error.what();
      break;
    }
    result.ledger.add(stats);
    interval_candidates += stats.candidates;
    interval_accepted += stats.accepted;

    if (k % run.sample_every != 0) {
      continue;
    }
    TimeSample sample = sample_observables(ensemble, model, run, engine.seed);
    sample.accept_ratio = interval_candidates == 0
                              ? 1.0
                              : static_cast<double>(interval_accepted) / static_cast<double>(interval_candidates);
    if (interval_candidates > 0 && sample.accept_ratio < 0.05 && !low_acceptance_warned) {
      report.warnings.push_back("acceptance ratio below 0.05: majorant too slack");
      low_acceptance_warned = true;
    }
    interval_candidates = interval_accepted = 0;
    result.series.push_back(sample);

    const std::size_t recorded = result.series.size() - 1;
    if (recorded >= run.burn_in + run.window) {
      summarise(report, result.series, run.window);
      if (report.relative_drift < run.tol) {
        report.converged = true;
        report.stop_reason = "steady";
        break;
      }
    }
  }
  summarise(report, result.series, run.window);
  report.steps = ensemble.steps();
  if (!report.converged && report.stop_reason.empty()) {
    report.stop_reason = "max_steps reached";
  }
  return result;
}

RunResult run_to_steady(const EngineConfig& engine, const RunConfig& run, const RestitutionModel& model,
                        const InitialCondition& init) {
  engine.validate();
  return run_to_steady(engine, run, model, make_initial(init, engine.n, engine.seed));
}

}  // namespace gsteady
