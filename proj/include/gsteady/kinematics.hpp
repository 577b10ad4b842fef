#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>

#include "gsteady/quadrature.hpp"
#include "gsteady/restitution.hpp"
#include "gsteady/vec3.hpp"

namespace gsteady {

struct VelocityPair {
  Vec3 v;
  Vec3 vs;
};

/// Tolerance on | |sigma| - 1 | accepted by the collision maps.
inline constexpr double kUnitTolerance = 1e-12;

/// Throws InputError unless |n| = 1 within kUnitTolerance.
void require_unit(const Vec3& n, const char* what);

/// Impact speed |u . n| = |u| sqrt((1 - u_hat . sigma) / 2) of the sigma map.
double impact_speed_sigma(const Vec3& u, const Vec3& sigma);

/// Post-collision velocities in the sigma parametrization:
///   v' = v - beta (u - |u| sigma) / 2,  v*' = v* + beta (u - |u| sigma) / 2,
/// with beta evaluated at the impact speed. v = v* is returned unchanged.
VelocityPair post_collision_sigma(const Vec3& v, const Vec3& vs, const Vec3& sigma,
                                  const RestitutionModel& model);

/// Same map with a precomputed beta; no validation. Momentum is conserved
/// bit-exactly because one transfer vector is subtracted and added.
inline VelocityPair apply_sigma_map(const Vec3& v, const Vec3& vs, const Vec3& sigma,
                                    double beta) noexcept {
  const Vec3 u = v - vs;
  const Vec3 transfer = (0.5 * beta) * (u - norm(u) * sigma);
  return {v - transfer, vs + transfer};
}

/// Post-collision velocities in the impact-direction parametrization:
///   v' = v - (1 + e)/2 (u . n) n with e = e(|u . n|).
VelocityPair post_collision_nhat(const Vec3& v, const Vec3& vs, const Vec3& nhat,
                                 const RestitutionModel& model);

/// Kinetic energy lost in the collision (v, v*, sigma):
///   |u|^2 (1 - u_hat . sigma) / 4 (1 - e^2).
double energy_loss(const Vec3& v, const Vec3& vs, const Vec3& sigma, const RestitutionModel& model);

/// (1/4pi) int_{S^2} [psi(v') + psi(v*')] d sigma by the product rule of
/// `quad` oriented around u_hat. psi may return a scalar or a Vec3.
template <class Psi>
auto angular_gain_average(Psi&& psi, const Vec3& v, const Vec3& vs, const RestitutionModel& model,
                          const AngularQuadrature& quad) {
  using Result = decltype(psi(v));
  const Vec3 u = v - vs;
  const double speed = norm(u);
  if (speed == 0.0) {
    return psi(v) + psi(vs);
  }
  const Vec3 u_hat = u / speed;
  Vec3 e1;
  Vec3 e2;
  orthonormal_frame(u_hat, e1, e2);

  const std::size_t n_phi = quad.n_phi;
  const double dphi = 2.0 * std::numbers::pi / static_cast<double>(n_phi);
  Result total{};
  for (std::size_t i = 0; i < quad.polar_size(); ++i) {
    const double s = quad.cosines[i];
    const double beta = model.beta(speed * std::sqrt(0.5 * (1.0 - s)));
    const double sin_theta = std::sqrt(std::max(0.0, 1.0 - s * s));
    Result ring{};
    for (std::size_t k = 0; k < n_phi; ++k) {
      const double phi = dphi * static_cast<double>(k);
      const Vec3 sigma =
          s * u_hat + sin_theta * (std::cos(phi) * e1 + std::sin(phi) * e2);
      const auto [vp, vsp] = apply_sigma_map(v, vs, sigma, beta);
      ring = ring + psi(vp) + psi(vsp);
    }
    total = total + quad.weights[i] * ring;
  }
  return total * (0.5 / static_cast<double>(n_phi));
}

/// (1/4pi) int_{S^2} [psi(v') + psi(v*') - psi(v) - psi(v*)] d sigma.
template <class Psi>
auto angular_average(Psi&& psi, const Vec3& v, const Vec3& vs, const RestitutionModel& model,
                     const AngularQuadrature& quad) {
  auto gain = angular_gain_average(psi, v, vs, model, quad);
  return gain - psi(v) - psi(vs);
}

}  // namespace gsteady
