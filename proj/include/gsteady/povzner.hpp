#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsteady/quadrature.hpp"
#include "gsteady/restitution.hpp"
#include "gsteady/vec3.hpp"

namespace gsteady {

/// Test function Psi(x) = x^p with the constants of the Povzner bound
///   A = 2^{p-1},  k = 5 / (96 * 2^{p-2}).
struct PovznerCase {
  double p = 2.0;
  double A = 2.0;
  double k = 5.0 / 96.0;

  static PovznerCase power(double p);
};

/// (1/4pi) int_{S^2} [Psi(|v'|^2) + Psi(|v*'|^2) - Psi(|v|^2) - Psi(|v*|^2)] d sigma.
double angular_kernel(const Vec3& v, const Vec3& vs, double p, const RestitutionModel& model,
                      const AngularQuadrature& quad);

/// Gain part (1/4pi) int [Psi(|v'|^2) + Psi(|v*'|^2)] d sigma.
double angular_gain(const Vec3& v, const Vec3& vs, double p, const RestitutionModel& model,
                    const AngularQuadrature& quad);

/// A (|v|^2 Psi'(|v*|^2) + |v*|^2 Psi'(|v|^2)) - k E^2 Psi''(E), E = |v|^2 + |v*|^2.
double povzner_rhs(const Vec3& v, const Vec3& vs, const PovznerCase& c);

/// Signed margin povzner_rhs - angular_kernel; non-negative when the bound holds.
double check_inequality(const Vec3& v, const Vec3& vs, const PovznerCase& c, const RestitutionModel& model,
                        const AngularQuadrature& quad);

/// int_0^1 [Psi(E(3+s)/4) + Psi(E(1-s)/4)] ds, the bound on the gain part.
double gain_bound(double energy, double p);

/// angular_kernel for v* = -v with |v| = speed, reduced to one dimension:
///   int_{-1}^{1} Psi(speed^2 [(1-b)^2 + b^2 + 2b(1-b)s]) ds - 2 Psi(speed^2),
/// b = beta(2 speed sqrt((1-s)/2)). Integrated on geometrically graded panels
/// independent of the angular rule.
double kernel_opposite_1d(double speed, double p, const RestitutionModel& model);

struct PovznerBatteryResult {
  std::string model;
  double p = 2.0;
  std::size_t pairs = 0;
  /// min over pairs of margin / E^p
  double worst_margin = 0.0;
  Vec3 worst_v;
  Vec3 worst_vs;
  /// min over pairs of (gain_bound - gain) / E^p
  double worst_gain_slack = 0.0;
  /// Largest k for which every sampled margin stays >= 0.
  double fitted_k = 0.0;
  double printed_k = 0.0;
  bool passed = false;
};

/// Standard-normal pairs (v, v*) from the verification stream of `seed`.
/// The inequality passes if every margin >= -tol E^p; the gain bound is
/// checked on the first `bound_pairs` pairs.
PovznerBatteryResult povzner_battery(const RestitutionModel& model, const std::string& label, double p,
                                     std::size_t pairs, std::uint64_t seed, std::size_t bound_pairs = 1000,
                                     double tol = 1e-9, const AngularQuadrature& quad = AngularQuadrature());

}  // namespace gsteady
