#pragma once

#include <array>
#include <functional>

#include "gsteady/restitution.hpp"
#include "gsteady/vec3.hpp"

namespace gsteady {

/// Change-of-variables maps attached to a restitution law. All members are
/// pure functions of the (immutable) model.
class MapBundle {
 public:
  explicit MapBundle(RestitutionModel model) : model_(model) {}

  const RestitutionModel& model() const noexcept { return model_; }

  /// eta_e(r) = r beta_e(r); r/2 <= eta_e(r) <= r.
  double eta(double r) const;

  /// Inverse of eta_e, by bisection on [s, 2s].
  double alpha(double s) const;

  /// Central (forward near 0) difference of theta_e(r) = r e(r).
  double theta_prime(double r) const;

  /// Jacobian of Pi_e at |z| = rho:
  ///   (1/2)(1 + theta_e'(alpha_e(rho))) beta_e(alpha_e(rho))^2, in [1/8, 1].
  double jacobian(double rho) const;

  /// Pi_e(w) = beta_e(|w|) w.
  Vec3 pi_forward(const Vec3& w) const;

  /// pi_e(z) = (alpha_e(|z|) / |z|) z, the inverse of Pi_e.
  Vec3 pi_inverse(const Vec3& z) const;

 private:
  RestitutionModel model_;
};

/// Phi_sigma(u) = (u + |u| sigma) / 2.
Vec3 phi_sigma(const Vec3& u, const Vec3& sigma);

/// Inverse of Phi_sigma on its image: 2w - (|w| / (w_hat . sigma)) sigma.
/// Throws DomainError when w_hat . sigma <= tolerance.
Vec3 varphi_sigma(const Vec3& w, const Vec3& sigma, double tolerance = 1e-12);

/// (1 + u_hat . sigma) / 8.
double jacobian_phi_sigma(const Vec3& u, const Vec3& sigma);

/// Determinant of the central-difference Jacobian of a map R^3 -> R^3 at x,
/// with step h * max(1, |x|).
double numerical_jacobian_det(const std::function<Vec3(const Vec3&)>& map, const Vec3& x,
                              double h = 1e-5);

}  // namespace gsteady
