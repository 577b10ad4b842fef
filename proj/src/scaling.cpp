#include "gsteady/scaling.hpp"

#include <cmath>
#include <limits>

#include "gsteady/dissipation.hpp"
#include "gsteady/error.hpp"

namespace gsteady {

ScalePair lambda_from_mu(double mu, double gamma) {
  if (!(mu > 0.0 && mu <= 1.0)) {
    throw InputError("mu must lie in (0, 1]");
  }
  if (!(gamma >= 0.0)) {
    throw InputError("gamma must be non-negative");
  }
  return {std::pow(mu, 1.0 / (3.0 + gamma)), gamma, mu};
}

ScalePair mu_from_lambda(double lambda, double gamma) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw InputError("lambda must lie in (0, 1]");
  }
  return {lambda, gamma, std::pow(lambda, 3.0 + gamma)};
}

Ensemble rescale_ensemble(const Ensemble& ensemble, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InputError("rescale factor must be positive");
  }
  Ensemble out = ensemble;
  for (auto& v : out.velocities()) {
    v /= lambda;
  }
  return out;
}

RescaledProblem rescaled_problem(const RestitutionModel& base, const EngineConfig& engine, double lambda) {
  RescaledProblem p{base.rescaled(lambda), engine};
  p.engine.mu = std::pow(lambda, base.gamma());
  return p;
}

ReplicaStats replica_stats(const std::vector<double>& values) {
  ReplicaStats s;
  const double n = static_cast<double>(values.size());
  if (values.empty()) {
    return s;
  }
  for (const double v : values) s.mean += v;
  s.mean /= n;
  if (values.size() > 1) {
    double ss = 0.0;
    for (const double v : values) ss += (v - s.mean) * (v - s.mean);
    s.se = std::sqrt(ss / (n - 1.0) / n);
  }
  return s;
}

double two_sample_z(const ReplicaStats& a, const ReplicaStats& b) {
  const double se = std::hypot(a.se, b.se);
  const double diff = a.mean - b.mean;
  if (se == 0.0) {
    if (diff == 0.0) return 0.0;
    return std::copysign(std::numeric_limits<double>::infinity(), diff);
  }
  return diff / se;
}

double ScalingEquivalence::max_abs_z() const {
  return std::max({std::abs(z[0]), std::abs(z[1]), std::abs(z[2])});
}

ScalingEquivalence scaling_equivalence_test(const EngineConfig& base, const RunConfig& run,
                                            const RestitutionModel& model, const InitialCondition& init,
                                            double lambda, const std::vector<std::uint64_t>& seeds) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw InputError("lambda must lie in (0, 1]");
  }
  if (seeds.size() < 2) {
    throw InputError("scaling equivalence needs at least two seeds");
  }
  ScalingEquivalence out;
  out.lambda = lambda;
  out.replicas = seeds.size();

  std::vector<double> phys[3];
  std::vector<double> resc[3];
  const double l2 = lambda * lambda;
  const double scale[3] = {1.0 / l2, 1.0 / (l2 * l2), 1.0 / (l2 * l2 * l2)};

  for (const std::uint64_t seed : seeds) {
    EngineConfig a = base;
    a.mu = mu_from_lambda(lambda, model.gamma()).mu;
    a.dt = base.dt / lambda;
    a.seed = 2 * seed;
    const InitialCondition init_a{init.kind, l2 * init.temperature};
    const RunResult ra = run_to_steady(a, run, model, init_a);
    out.physical_converged = out.physical_converged && ra.report.converged;
    phys[0].push_back(ra.report.m1 * scale[0]);
    phys[1].push_back(ra.report.m2 * scale[1]);
    phys[2].push_back(ra.report.m3 * scale[2]);

    RescaledProblem b = rescaled_problem(model, base, lambda);
    b.engine.seed = 2 * seed + 1;
    const RunResult rb = run_to_steady(b.engine, run, b.model, init);
    out.rescaled_converged = out.rescaled_converged && rb.report.converged;
    resc[0].push_back(rb.report.m1);
    resc[1].push_back(rb.report.m2);
    resc[2].push_back(rb.report.m3);
  }
  for (int k = 0; k < 3; ++k) {
    out.physical[k] = replica_stats(phys[k]);
    out.rescaled[k] = replica_stats(resc[k]);
    out.z[k] = two_sample_z(out.physical[k], out.rescaled[k]);
  }
  return out;
}

SweepPoint sweep_point(const RestitutionModel& base, const EngineConfig& engine, const RunConfig& run,
                       const InitialCondition& init, double lambda) {
  const RescaledProblem problem = rescaled_problem(base, engine, lambda);
  const RunResult result = run_to_steady(problem.engine, run, problem.model, init);
  SweepPoint p;
  p.lambda = lambda;
  p.temperature = result.report.temperature;
  p.theta_oracle = theta_limit(base.a(), base.gamma()).theta;
  p.theta_closure = closure_temperature(DissipationSpec(problem.model), problem.engine.mu);
  p.distance = maxwellian_distance(result.ensemble, p.theta_oracle);
  p.m3 = result.report.m3;
  const TailReport tail = tail_integral(result.ensemble, run.tail_rate);
  p.tail_value = result.report.tail_value;
  p.tail_max_share = tail.max_share;
  p.diss_estimate = result.report.diss_estimate;
  p.six_mu = result.report.six_mu;
  p.converged = result.report.converged;
  p.steps = result.report.steps;
  return p;
}

SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw InputError("line fit needs two or more matched points");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) {
    throw InputError("line fit needs distinct abscissae");
  }
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (x.size() > 2) {
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double r = y[i] - fit.intercept - fit.slope * x[i];
      rss += r * r;
    }
    fit.se = std::sqrt(rss / (n - 2.0) / sxx);
  } else {
    fit.se = std::numeric_limits<double>::infinity();
  }
  return fit;
}

}  // namespace gsteady
