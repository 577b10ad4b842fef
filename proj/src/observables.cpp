#include "gsteady/observables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "gsteady/error.hpp"
#include "gsteady/quadrature.hpp"

namespace gsteady {

MomentReport moments(const Ensemble& ensemble, std::span<const double> orders) {
  if (ensemble.size() == 0) {
    throw InputError("moments of an empty ensemble");
  }
  MomentReport report;
  report.m[0.0] = 1.0;
  const double n = static_cast<double>(ensemble.size());
  for (const double p : orders) {
    if (p == 0.0) continue;
    double sum = 0.0;
    for (const auto& v : ensemble.velocities()) {
      const double s2 = norm2(v);
      sum += (p == 1.0) ? s2 : std::pow(s2, p);
    }
    report.m[p] = sum / n;
  }
  const double m1 = report.m.contains(1.0) ? report.m[1.0] : ensemble.mean_square_speed();
  report.temperature = m1 / 3.0;
  return report;
}

TailReport tail_integral(const Ensemble& ensemble, double rate) {
  if (!(rate >= 0.0)) {
    throw InputError("tail rate A must be non-negative");
  }
  if (ensemble.size() == 0) {
    throw InputError("tail integral of an empty ensemble");
  }
  double sum = 0.0;
  double largest = 0.0;
  for (const auto& v : ensemble.velocities()) {
    const double term = std::exp(rate * std::pow(norm(v), 1.5));
    sum += term;
    largest = std::max(largest, term);
  }
  return {rate, sum / static_cast<double>(ensemble.size()), largest / sum};
}

double maxwell_moment(double p, double theta) {
  if (p == 1.0) {
    return 3.0 * theta;
  }
  return std::pow(2.0 * theta, p) * std::exp(std::lgamma(p + 1.5) - std::lgamma(1.5));
}

double maxwell_speed_cdf(double s, double theta) {
  if (s <= 0.0) return 0.0;
  const double x = s / std::sqrt(theta);
  return std::erf(x / std::numbers::sqrt2) -
         std::sqrt(2.0 / std::numbers::pi) * x * std::exp(-0.5 * x * x);
}

double maxwell_tail_integral(double rate, double theta) {
  // Speed density sqrt(2/pi) x^2 exp(-x^2/2) in x = |v| / sqrt(Theta).
  const GaussLegendre rule(200);
  double total = 0.0;
  const double width = 1.0;
  for (int k = 0; k < 40; ++k) {
    total += rule.integrate(
        [&](double x) {
          const double speed = x * std::sqrt(theta);
          return std::sqrt(2.0 / std::numbers::pi) * x * x *
                 std::exp(-0.5 * x * x + rate * std::pow(speed, 1.5));
        },
        k * width, (k + 1) * width);
  }
  return total;
}

MaxwellianDistance maxwellian_distance(const Ensemble& ensemble, double theta) {
  if (!(theta > 0.0)) {
    throw InputError("Maxwellian temperature must be positive");
  }
  const MomentReport report = moments(ensemble);
  MaxwellianDistance out;
  for (const double p : kDefaultMomentOrders) {
    const double reference = maxwell_moment(p, theta);
    out.d_moment += std::abs(report.at(p) - reference) / reference;
  }

  constexpr int kBins = 64;
  const double top = 5.0 * std::sqrt(theta);
  const double width = top / kBins;
  std::array<double, kBins + 1> counts{};
  for (const auto& v : ensemble.velocities()) {
    const double s = norm(v);
    const auto bin = s >= top ? kBins : std::min(kBins - 1, static_cast<int>(s / width));
    counts[bin] += 1.0;
  }
  const double n = static_cast<double>(ensemble.size());
  double previous = 0.0;
  for (int b = 0; b < kBins; ++b) {
    const double next = maxwell_speed_cdf((b + 1) * width, theta);
    out.d_hist += std::abs(counts[b] / n - (next - previous));
    previous = next;
  }
  out.d_hist += std::abs(counts[kBins] / n - (1.0 - previous));
  return out;
}

}  // namespace gsteady
