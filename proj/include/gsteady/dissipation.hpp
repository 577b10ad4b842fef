#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "gsteady/quadrature.hpp"
#include "gsteady/restitution.hpp"

namespace gsteady {

class Ensemble;

/// Energy dissipation potential of a restitution law,
///   Psi_e(r) = r^{3/2}/2 int_0^1 (1 - e(sqrt(r) z)^2) z^3 dz,
/// together with its rescaled and limiting forms zeta_lambda, zeta_0.
class DissipationSpec {
 public:
  explicit DissipationSpec(RestitutionModel model, std::size_t n_z = 64);

  const RestitutionModel& model() const noexcept { return model_; }
  double a() const noexcept { return model_.a(); }
  double gamma() const noexcept { return model_.gamma(); }

  /// Psi_e(r) for r = |u|^2 >= 0 (the model as given, including its rescale).
  double psi(double r) const;

  /// lambda^{-(3+gamma)} Psi_e(lambda^2 r2) of the un-rescaled base model.
  double zeta_lambda(double lambda, double r2) const;

 private:
  RestitutionModel model_;
  GaussLegendre rule_;
};

/// (a / (4 + gamma)) r2^{(3+gamma)/2}.
double zeta_zero(double a, double gamma, double r2);

struct ThetaResult {
  double theta;               ///< closed-form temperature, defines the limit Maxwellian
  double theta_paper_formula; ///< the printed closed form, reported alongside
};

/// Temperature of the quasi-elastic limit Maxwellian: the Theta for which
/// (a/(4+gamma)) E|V - V*|^{3+gamma} = 6 with V, V* iid N(0, Theta I).
ThetaResult theta_limit(double a, double gamma);

/// E Psi_e(|V - V*|^2) for V, V* independent N(0, T I).
double maxwellian_dissipation(const DissipationSpec& spec, double temperature);

/// Temperature at which the Maxwellian dissipation of `spec` balances a bath
/// of strength mu (6 mu = maxwellian_dissipation). For the rescaled law at
/// lambda with mu = lambda^gamma this is the finite-lambda counterpart of
/// theta_limit; it tends to theta_limit as lambda -> 0.
double closure_temperature(const DissipationSpec& spec, double mu);

struct PairEstimatorOptions {
  std::size_t exact_max_n = 2000;      ///< all pairs up to this size
  std::size_t sampled_pairs = 1000000; ///< pairs drawn with replacement beyond it
  std::uint64_t seed = 0;
  std::uint64_t stream_step = 0;
};

/// Estimator of int int f f zeta(|v - v*|^2) for the empirical measure,
/// normalised as (1/N^2) sum_{i != j} zeta(|v_i - v_j|^2).
double dissipation_functional(const Ensemble& ensemble, const std::function<double(double)>& zeta,
                              const PairEstimatorOptions& options = {});

}  // namespace gsteady
