#pragma once

#include <cstdint>
#include <vector>

#include "gsteady/dsmc.hpp"
#include "gsteady/ensemble.hpp"
#include "gsteady/observables.hpp"
#include "gsteady/restitution.hpp"

namespace gsteady {

/// Bath strength mu and quasi-elastic parameter lambda tied by mu = lambda^{3+gamma}.
struct ScalePair {
  double lambda = 1.0;
  double gamma = 0.0;
  double mu = 1.0;
};

ScalePair lambda_from_mu(double mu, double gamma);
ScalePair mu_from_lambda(double lambda, double gamma);

/// Every velocity divided by lambda; clock and counters are kept.
Ensemble rescale_ensemble(const Ensemble& ensemble, double lambda);

/// The rescaled problem at lambda: restitution e(lambda r), bath lambda^gamma.
struct RescaledProblem {
  RestitutionModel model;
  EngineConfig engine;
};

RescaledProblem rescaled_problem(const RestitutionModel& base, const EngineConfig& engine, double lambda);

/// Sample mean and standard error over replicas.
struct ReplicaStats {
  double mean = 0.0;
  double se = 0.0;
};

ReplicaStats replica_stats(const std::vector<double>& values);

/// (mean_a - mean_b) / sqrt(se_a^2 + se_b^2); 0 when both errors vanish and the
/// means agree, +-inf when they vanish and the means differ.
double two_sample_z(const ReplicaStats& a, const ReplicaStats& b);

struct ScalingEquivalence {
  double lambda = 1.0;
  std::size_t replicas = 0;
  ReplicaStats physical[3];  ///< m1, m2, m3 of the rescaled physical steady state
  ReplicaStats rescaled[3];  ///< m1, m2, m3 of the rescaled problem
  double z[3] = {0.0, 0.0, 0.0};
  bool physical_converged = true;
  bool rescaled_converged = true;

  double max_abs_z() const;
};

/// Runs, per seed, (A) the physical problem e, mu = lambda^{3+gamma}, from
/// an initial state at temperature lambda^2 T0 with time step dt / lambda, and
/// rescales its steady ensemble by lambda; and (B) the rescaled problem from
/// temperature T0 with time step dt. Sides use disjoint seeds. Moments are
/// window averages of each run.
ScalingEquivalence scaling_equivalence_test(const EngineConfig& base, const RunConfig& run,
                                            const RestitutionModel& model, const InitialCondition& init,
                                            double lambda, const std::vector<std::uint64_t>& seeds);

/// Steady state of the rescaled problem at one lambda, compared with the
/// quasi-elastic limit Maxwellian.
struct SweepPoint {
  double lambda = 1.0;
  double temperature = 0.0;
  double theta_oracle = 0.0;
  double theta_closure = 0.0;  ///< Maxwellian balance temperature at this lambda
  MaxwellianDistance distance;
  double m3 = 0.0;
  double tail_value = 0.0;
  double tail_max_share = 0.0;
  double diss_estimate = 0.0;
  double six_mu = 0.0;
  bool converged = false;
  std::uint64_t steps = 0;
};

SweepPoint sweep_point(const RestitutionModel& base, const EngineConfig& engine, const RunConfig& run,
                       const InitialCondition& init, double lambda);

/// Least-squares slope of y on x with its standard error.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double se = 0.0;
};

SlopeFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace gsteady
