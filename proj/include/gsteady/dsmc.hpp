#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gsteady/ensemble.hpp"
#include "gsteady/restitution.hpp"

namespace gsteady {

/// Parameters of the particle scheme for  d_t f = Q_e(f, f) + mu Lap_v f.
struct EngineConfig {
  std::size_t n = 10000;
  double dt = 0.05;
  double mu = 0.0;  ///< bath strength, speed^2 / time
  std::uint64_t seed = 1;
  bool recenter = true;
  double umax_factor = 2.0;  ///< majorant slack >= 1
  /// Test hook: false skips the collision substep (majorant rate 0).
  bool collisions = true;
  /// Upper bound on the per-particle collision probability of one step.
  double max_collision_fraction = 0.2;

  void validate() const;

  bool operator==(const EngineConfig&) const = default;
};

/// Steady-state detection and sampling.
struct RunConfig {
  std::size_t max_steps = 200000;
  std::size_t window = 200;        ///< samples in the trailing window
  std::size_t sample_every = 10;   ///< steps between samples
  std::size_t burn_in = 200;       ///< samples discarded before the first check
  double tol = 0.01;               ///< relative m1 drift allowed across the window
  std::size_t diss_pairs = 20000;  ///< sampled pairs per dissipation estimate
  double tail_rate = 0.1;          ///< A of the tail integral

  void validate() const;

  bool operator==(const RunConfig&) const = default;
};

/// Energies per unit mass (units of |v|^2) exchanged during one step.
struct StepStats {
  std::uint64_t candidates = 0;
  std::uint64_t accepted = 0;
  double u_max = 0.0;
  double bath_energy = 0.0;       ///< actual kick energy
  double recenter_energy = 0.0;   ///< removed with the mean velocity
  double collision_loss = 0.0;    ///< sum of per-collision energy losses
};

/// One bath-then-collide step: Gaussian kicks of per-component standard
/// deviation sqrt(2 mu dt) from per-particle Philox streams, then majorant
/// sampling of collisions with per-pair rate |v_i - v_j| / N, then optional
/// removal of the mean velocity.
///
/// Throws MajorantViolation if a candidate pair exceeds the majorant,
/// StepSizeError if dt no longer resolves the collision rate, and
/// NonFiniteVelocity on overflow.
StepStats step(Ensemble& ensemble, const EngineConfig& config, const RestitutionModel& model);

/// Cumulative energy bookkeeping; E(t) - E(0) = bath - recenter - loss.
struct EnergyLedger {
  double bath = 0.0;
  double recenter = 0.0;
  double loss = 0.0;

  void add(const StepStats& s) noexcept {
    bath += s.bath_energy;
    recenter += s.recenter_energy;
    loss += s.collision_loss;
  }
  double net() const noexcept { return bath - recenter - loss; }
};

struct TimeSample {
  std::uint64_t step = 0;
  double t = 0.0;
  double m1 = 0.0;
  double m3_2 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double diss_estimate = 0.0;
  double accept_ratio = 1.0;  ///< over the sampling interval
  double tail_value = 1.0;
};

struct SteadyReport {
  double temperature = 0.0;  ///< window mean of m1 / 3
  double m1 = 0.0;
  double m3_2 = 0.0;
  double m2 = 0.0;
  double m3 = 0.0;
  double diss_estimate = 0.0;
  double six_mu = 0.0;
  double tail_rate = 0.0;
  double tail_value = 0.0;
  double accept_ratio = 1.0;
  double relative_drift = 0.0;  ///< |slope| * span / mean m1 over the last window
  std::uint64_t steps = 0;
  bool converged = false;
  std::string stop_reason;
  std::vector<std::string> warnings;
};

struct RunResult {
  Ensemble ensemble;
  SteadyReport report;
  std::vector<TimeSample> series;
  EnergyLedger ledger;
  double initial_energy = 0.0;
};

/// Step until the least-squares slope of m1 over the trailing window is
/// below tol * mean(m1) / span, or max_steps. Non-convergence is reported,
/// not thrown.
RunResult run_to_steady(const EngineConfig& engine, const RunConfig& run, const RestitutionModel& model,
                        Ensemble initial);

RunResult run_to_steady(const EngineConfig& engine, const RunConfig& run, const RestitutionModel& model,
                        const InitialCondition& init);

/// Sample of the current ensemble (moments, dissipation estimate, tail).
TimeSample sample_observables(const Ensemble& ensemble, const RestitutionModel& model,
                              const RunConfig& run, std::uint64_t seed);

}  // namespace gsteady
