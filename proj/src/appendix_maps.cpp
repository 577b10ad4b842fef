#include "gsteady/appendix_maps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gsteady/error.hpp"

namespace gsteady {

double MapBundle::eta(double r) const {
  if (!(r >= 0.0)) {
    throw InputError("eta_e needs r >= 0");
  }
  return r * model_.beta(r);
}

double MapBundle::alpha(double s) const {
  if (!(s >= 0.0)) {
    throw InputError("alpha_e needs s >= 0");
  }
  if (s == 0.0) {
    return 0.0;
  }
  double lo = s;
  double hi = 2.0 * s;
  const double tol = std::min(1e-12, 2.0 * std::numeric_limits<double>::epsilon() * s);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (eta(mid) < s ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double MapBundle::theta_prime(double r) const {
  const double h = std::max(1e-6, 1e-6 * r);
  if (r < h) {
    return (model_.theta_map(r + h) - model_.theta_map(r)) / h;
  }
  return (model_.theta_map(r + h) - model_.theta_map(r - h)) / (2.0 * h);
}

double MapBundle::jacobian(double rho) const {
  const double r = alpha(rho);
  const double b = model_.beta(r);
  return 0.5 * (1.0 + theta_prime(r)) * b * b;
}

Vec3 MapBundle::pi_forward(const Vec3& w) const { return model_.beta(norm(w)) * w; }

Vec3 MapBundle::pi_inverse(const Vec3& z) const {
  const double len = norm(z);
  if (len == 0.0) {
    return z;
  }
  return (alpha(len) / len) * z;
}

Vec3 phi_sigma(const Vec3& u, const Vec3& sigma) { return 0.5 * (u + norm(u) * sigma); }

Vec3 varphi_sigma(const Vec3& w, const Vec3& sigma, double tolerance) {
  const double len = norm(w);
  if (len == 0.0) {
    throw DomainError("varphi_sigma undefined at w = 0");
  }
  const double cosine = dot(w, sigma) / len;
  if (!(cosine > tolerance)) {
    throw DomainError("varphi_sigma needs w_hat . sigma > 0");
  }
  return 2.0 * w - (len / cosine) * sigma;
}

double jacobian_phi_sigma(const Vec3& u, const Vec3& sigma) {
  return 0.125 * (1.0 + dot(u, sigma) / norm(u));
}

double numerical_jacobian_det(const std::function<Vec3(const Vec3&)>& map, const Vec3& x, double h) {
  const double step = h * std::max(1.0, norm(x));
  std::array<Vec3, 3> columns;
  for (int k = 0; k < 3; ++k) {
    Vec3 dx;
    (k == 0 ? dx.x : (k == 1 ? dx.y : dx.z)) = step;
    columns[k] = (map(x + dx) - map(x - dx)) / (2.0 * step);
  }
  return dot(columns[0], cross(columns[1], columns[2]));
}

}  // namespace gsteady
