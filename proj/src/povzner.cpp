#include "gsteady/povzner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsteady/error.hpp"
#include "gsteady/kinematics.hpp"
#include "gsteady/rng.hpp"

namespace gsteady {

PovznerCase PovznerCase::power(double p) {
  if (!(p >= 1.0)) {
    throw InputError("Povzner exponent p must be >= 1");
  }
  return {p, std::pow(2.0, p - 1.0), 5.0 / (96.0 * std::pow(2.0, p - 2.0))};
}

double angular_gain(const Vec3& v, const Vec3& vs, double p, const RestitutionModel& model,
                    const AngularQuadrature& quad) {
  return angular_gain_average([p](const Vec3& w) { return std::pow(norm2(w), p); }, v, vs, model, quad);
}

double angular_kernel(const Vec3& v, const Vec3& vs, double p, const RestitutionModel& model,
                      const AngularQuadrature& quad) {
  return angular_gain(v, vs, p, model, quad) - std::pow(norm2(v), p) - std::pow(norm2(vs), p);
}

double povzner_rhs(const Vec3& v, const Vec3& vs, const PovznerCase& c) {
  const double x = norm2(v);
  const double y = norm2(vs);
  const double e = x + y;
  const double p = c.p;
  const double first = c.A * (x * p * std::pow(y, p - 1.0) + y * p * std::pow(x, p - 1.0));
  if (e == 0.0) {
    return first;
  }
  return first - c.k * e * e * p * (p - 1.0) * std::pow(e, p - 2.0);
}

double check_inequality(const Vec3& v, const Vec3& vs, const PovznerCase& c, const RestitutionModel& model,
                        const AngularQuadrature& quad) {
  return povzner_rhs(v, vs, c) - angular_kernel(v, vs, c.p, model, quad);
}

double gain_bound(double energy, double p) {
  static const GaussLegendre rule(48);
  return rule.integrate(
      [&](double s) {
        return std::pow(energy * (3.0 + s) / 4.0, p) + std::pow(energy * (1.0 - s) / 4.0, p);
      },
      0.0, 1.0);
}

double kernel_opposite_1d(double speed, double p, const RestitutionModel& model) {
  // t = sqrt((1 - s)/2) is the impact fraction: s = 1 - 2t^2, ds = 4t dt.
  static const GaussLegendre rule(40);
  const double x = speed * speed;
  auto integrand = [&](double t) {
    const double b = model.beta(2.0 * speed * t);
    const double s = 1.0 - 2.0 * t * t;
    const double w2 = (1.0 - b) * (1.0 - b) + b * b + 2.0 * b * (1.0 - b) * s;
    return std::pow(x * w2, p) * 4.0 * t;
  };
  double total = 0.0;
  double hi = 1.0;
  for (int panel = 0; panel < 24; ++panel) {
    const double lo = hi * 0.5;
    total += rule.integrate(integrand, lo, hi);
    hi = lo;
  }
  total += rule.integrate(integrand, 0.0, hi);
  return total - 2.0 * std::pow(x, p);
}

PovznerBatteryResult povzner_battery(const RestitutionModel& model, const std::string& label, double p,
                                     std::size_t pairs, std::uint64_t seed, std::size_t bound_pairs, double tol,
                                     const AngularQuadrature& quad) {
  const PovznerCase c = PovznerCase::power(p);
  PovznerBatteryResult r;
  r.model = label;
  r.p = p;
  r.pairs = pairs;
  r.printed_k = c.k;
  r.worst_margin = std::numeric_limits<double>::infinity();
  r.worst_gain_slack = std::numeric_limits<double>::infinity();
  r.fitted_k = std::numeric_limits<double>::infinity();

  for (std::size_t i = 0; i < pairs; ++i) {
    rng::CounterStream stream(seed, rng::Stream::Verification, static_cast<std::uint64_t>(p * 1000.0),
                              static_cast<std::uint32_t>(i));
    const Vec3 v{stream.normal(), stream.normal(), stream.normal()};
    const Vec3 vs{stream.normal(), stream.normal(), stream.normal()};
    const double energy = norm2(v) + norm2(vs);
    const double ep = std::pow(energy, p);
    const double gain = angular_gain(v, vs, p, model, quad);
    const double kernel = gain - std::pow(norm2(v), p) - std::pow(norm2(vs), p);
    const double margin = (povzner_rhs(v, vs, c) - kernel) / ep;
    if (margin < r.worst_margin) {
      r.worst_margin = margin;
      r.worst_v = v;
      r.worst_vs = vs;
    }
    if (p > 1.0) {
      const double dissipative = energy * energy * p * (p - 1.0) * std::pow(energy, p - 2.0);
      const PovznerCase no_k{p, c.A, 0.0};
      r.fitted_k = std::min(r.fitted_k, (povzner_rhs(v, vs, no_k) - kernel) / dissipative);
    }
    if (i < bound_pairs) {
      r.worst_gain_slack = std::min(r.worst_gain_slack, (gain_bound(energy, p) - gain) / ep);
    }
  }
  r.passed = r.worst_margin >= -tol && (bound_pairs == 0 || r.worst_gain_slack >= -tol);
  return r;
}

}  // namespace gsteady
