#include "gsteady/kinematics.hpp"

#include <string>

#include "gsteady/error.hpp"

namespace gsteady {

void require_unit(const Vec3& n, const char* what) {
  const double len = norm(n);
  if (!(std::abs(len - 1.0) <= kUnitTolerance)) {
    throw InputError(std::string(what) + " must be a unit vector");
  }
}

double impact_speed_sigma(const Vec3& u, const Vec3& sigma) {
  const double speed = norm(u);
  if (speed == 0.0) {
    return 0.0;
  }
  const double c = std::min(1.0, std::max(-1.0, dot(u, sigma) / speed));
  return speed * std::sqrt(0.5 * (1.0 - c));
}

VelocityPair post_collision_sigma(const Vec3& v, const Vec3& vs, const Vec3& sigma,
                                  const RestitutionModel& model) {
  require_unit(sigma, "sigma");
  const Vec3 u = v - vs;
  if (norm2(u) == 0.0) {
    return {v, vs};
  }
  return apply_sigma_map(v, vs, sigma, model.beta(impact_speed_sigma(u, sigma)));
}

VelocityPair post_collision_nhat(const Vec3& v, const Vec3& vs, const Vec3& nhat,
                                 const RestitutionModel& model) {
  require_unit(nhat, "n_hat");
  const double normal = dot(v - vs, nhat);
  const double e = model.eval(std::abs(normal));
  const Vec3 transfer = (0.5 * (1.0 + e) * normal) * nhat;
  return {v - transfer, vs + transfer};
}

double energy_loss(const Vec3& v, const Vec3& vs, const Vec3& sigma, const RestitutionModel& model) {
  require_unit(sigma, "sigma");
  const Vec3 u = v - vs;
  const double speed2 = norm2(u);
  if (speed2 == 0.0) {
    return 0.0;
  }
  const double impact = impact_speed_sigma(u, sigma);
  // |u|^2 (1 - u_hat.sigma) / 4 = impact^2 / 2
  return 0.5 * impact * impact * model.one_minus_e_squared(impact);
}

}  // namespace gsteady
