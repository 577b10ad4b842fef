#include "gsteady/dissipation.hpp"

#include <cmath>
#include <numbers>

#include "gsteady/ensemble.hpp"
#include "gsteady/error.hpp"
#include "gsteady/rng.hpp"

namespace gsteady {

DissipationSpec::DissipationSpec(RestitutionModel model, std::size_t n_z)
    : model_(model), rule_(n_z) {
  if (n_z < 8) {
    throw InputError("dissipation quadrature needs n_z >= 8");
  }
}

namespace {

double psi_of(const RestitutionModel& model, const GaussLegendre& rule, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw InputError("Psi_e argument must be finite and non-negative");
  }
  if (r == 0.0 || model.is_elastic()) {
    return 0.0;
  }
  const double speed = std::sqrt(r);
  const double integral = rule.integrate(
      [&](double z) { return model.one_minus_e_squared(speed * z) * z * z * z; }, 0.0, 1.0);
  return 0.5 * r * speed * integral;
}

}  // namespace

double DissipationSpec::psi(double r) const { return psi_of(model_, rule_, r); }

double DissipationSpec::zeta_lambda(double lambda, double r2) const {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw InputError("zeta_lambda needs lambda in (0, 1]");
  }
  if (!(r2 >= 0.0)) {
    throw InputError("zeta_lambda argument must be non-negative");
  }
  return psi_of(model_.base(), rule_, lambda * lambda * r2) / std::pow(lambda, 3.0 + model_.gamma());
}

double zeta_zero(double a, double gamma, double r2) {
  if (!(r2 >= 0.0)) {
    throw InputError("zeta_zero argument must be non-negative");
  }
  return a / (4.0 + gamma) * std::pow(r2, 0.5 * (3.0 + gamma));
}

double maxwellian_dissipation(const DissipationSpec& spec, double temperature) {
  if (!(temperature > 0.0)) {
    throw InputError("temperature must be positive");
  }
  // |V - V*| = sqrt(2T) x with x chi-distributed, 3 degrees of freedom.
  static const GaussLegendre rule(32);
  double total = 0.0;
  for (int k = 0; k < 12; ++k) {
    total += rule.integrate(
        [&](double x) {
          return std::sqrt(2.0 / std::numbers::pi) * x * x * std::exp(-0.5 * x * x) *
                 spec.psi(2.0 * temperature * x * x);
        },
        k, k + 1.0);
  }
  return total;
}

double closure_temperature(const DissipationSpec& spec, double mu) {
  if (!(mu > 0.0)) {
    throw InputError("closure temperature needs mu > 0");
  }
  if (spec.model().is_elastic()) {
    throw DomainError("an elastic gas has no steady temperature under a bath");
  }
  const double target = 6.0 * mu;
  double lo = 1.0;
  double hi = 1.0;
  while (maxwellian_dissipation(spec, lo) > target) lo *= 0.5;
  while (maxwellian_dissipation(spec, hi) < target) hi *= 2.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-14 * hi; ++iter) {
    const double mid = std::sqrt(lo * hi);
    (maxwellian_dissipation(spec, mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

ThetaResult theta_limit(double a, double gamma) {
  if (!(a > 0.0) || !(gamma > 0.0)) {
    throw InputError("theta_limit needs a > 0 and gamma > 0");
  }
  const double q = 3.0 + gamma;
  // V - V* ~ N(0, 2 Theta I): E|W|^q = (4 Theta)^{q/2} Gamma((q+3)/2) / Gamma(3/2).
  const double gamma_ratio = std::tgamma(0.5 * (q + 3.0)) / std::tgamma(1.5);
  const double theta = 0.25 * std::pow(6.0 * (4.0 + gamma) / (a * gamma_ratio), 2.0 / q);

  const double m_q = std::pow(2.0, 0.5 * q) * std::tgamma(3.0 + 0.5 * gamma) / std::tgamma(1.5);
  const double printed = std::pow(6.0 * (4.0 + gamma) / (a * std::pow(2.0, 1.5) * m_q), 2.0 / q);
  return {theta, printed};
}

double dissipation_functional(const Ensemble& ensemble, const std::function<double(double)>& zeta,
                              const PairEstimatorOptions& options) {
  const auto& v = ensemble.velocities();
  const std::size_t n = v.size();
  if (n == 0) {
    throw InputError("dissipation_functional needs a non-empty ensemble");
  }
  if (n == 1) {
    return 0.0;
  }
  const double nd = static_cast<double>(n);
  if (n <= options.exact_max_n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        sum += zeta(norm2(v[i] - v[j]));
      }
    }
    return 2.0 * sum / (nd * nd);
  }
  if (options.sampled_pairs == 0) {
    throw InputError("dissipation_functional needs at least one sampled pair");
  }
  rng::CounterStream stream(options.seed, rng::Stream::PairSampling, options.stream_step);
  double sum = 0.0;
  for (std::size_t k = 0; k < options.sampled_pairs; ++k) {
    const auto i = static_cast<std::size_t>(stream.uniform() * nd);
    auto j = static_cast<std::size_t>(stream.uniform() * (nd - 1.0));
    if (j >= i) ++j;
    sum += zeta(norm2(v[i] - v[j]));
  }
  const double pair_mean = sum / static_cast<double>(options.sampled_pairs);
  return pair_mean * (nd - 1.0) / nd;
}

}  // namespace gsteady
