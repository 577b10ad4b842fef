#include "gsteady/restitution.hpp"

#include <algorithm>
#include <cmath>

#include "gsteady/error.hpp"

namespace gsteady {

std::string to_string(RestitutionKind kind) {
  switch (kind) {
    case RestitutionKind::Constant:
      return "constant";
    case RestitutionKind::PowerLaw:
      return "power_law";
    case RestitutionKind::ViscoelasticImplicit:
      return "viscoelastic";
  }
  return "unknown";
}

RestitutionKind restitution_kind_from_string(const std::string& name) {
  if (name == "constant") return RestitutionKind::Constant;
  if (name == "power_law" || name == "powerlaw") return RestitutionKind::PowerLaw;
  if (name == "viscoelastic") return RestitutionKind::ViscoelasticImplicit;
  throw InputError("unknown restitution kind '" + name + "'");
}

RestitutionModel RestitutionModel::constant(double e0) {
  if (!(e0 > 0.0 && e0 <= 1.0)) {
    throw InputError("constant restitution e0 must lie in (0, 1]");
  }
  // e - 1 + (1 - e0) r^0 vanishes identically, so any gamma_bar > 0 works.
  return {RestitutionKind::Constant, e0, 1.0 - e0, 0.0, 1.0};
}

RestitutionModel RestitutionModel::power_law(double a, double gamma) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InputError("power-law coefficient a must be positive");
  }
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw InputError("power-law exponent gamma must lie in (0, 1]");
  }
  return {RestitutionKind::PowerLaw, 1.0, a, gamma, 2.0 * gamma};
}

RestitutionModel RestitutionModel::viscoelastic(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw InputError("viscoelastic coefficient a must be positive");
  }
  return {RestitutionKind::ViscoelasticImplicit, 1.0, a, 0.2, 0.4};
}

double solve_viscoelastic(double c) {
  if (c == 0.0) {
    return 1.0;
  }
  // With x = e^{1/5} the equation becomes x^5 + c x^3 - 1 = 0, smooth and
  // increasing on [0, 1]. Bisection brackets, Newton polishes.
  auto f = [c](double x) { return x * x * x * (x * x + c) - 1.0; };
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 12; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 60; ++i) {
    const double fx = f(x);
    if (fx == 0.0) break;
    (fx < 0.0 ? lo : hi) = x;
    const double dfx = x * x * (5.0 * x * x + 3.0 * c);
    double next = x - fx / dfx;
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (std::abs(next - x) <= 1e-16 * x) {
      x = next;
      break;
    }
    x = next;
  }
  const double x2 = x * x;
  return x2 * x2 * x;
}

double RestitutionModel::eval_unscaled(double r) const {
  switch (kind_) {
    case RestitutionKind::Constant:
      return e0_;
    case RestitutionKind::PowerLaw:
      return 1.0 / (1.0 + a_ * std::pow(r, gamma_));
    case RestitutionKind::ViscoelasticImplicit:
      return solve_viscoelastic(a_ * std::pow(r, 0.2));
  }
  return 1.0;
}

double RestitutionModel::eval(double r) const {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw InputError("impact speed must be finite and non-negative");
  }
  return eval_unscaled(lambda_ * r);
}

double RestitutionModel::one_minus_e_squared(double r) const {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw InputError("impact speed must be finite and non-negative");
  }
  const double rs = lambda_ * r;
  switch (kind_) {
    case RestitutionKind::Constant:
      return (1.0 - e0_) * (1.0 + e0_);
    case RestitutionKind::PowerLaw: {
      const double x = a_ * std::pow(rs, gamma_);
      return x * (2.0 + x) / ((1.0 + x) * (1.0 + x));
    }
    case RestitutionKind::ViscoelasticImplicit: {
      // 1 - e = c e^{3/5} on the root.
      const double c = a_ * std::pow(rs, 0.2);
      const double e = solve_viscoelastic(c);
      return c * std::pow(e, 0.6) * (1.0 + e);
    }
  }
  return 0.0;
}

RestitutionModel RestitutionModel::rescaled(double lambda) const {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw InputError("rescale factor lambda must lie in (0, 1]");
  }
  RestitutionModel out = *this;
  out.lambda_ = lambda_ * lambda;
  return out;
}

RestitutionModel RestitutionModel::base() const {
  RestitutionModel out = *this;
  out.lambda_ = 1.0;
  return out;
}

double ell_gamma(const RestitutionModel& model, std::span<const double> grid) {
  if (grid.empty()) {
    throw InputError("ell_gamma needs a non-empty grid");
  }
  double sup = 0.0;
  for (const double r : grid) {
    if (!(r > 0.0)) {
      throw InputError("ell_gamma grid entries must be positive");
    }
    sup = std::max(sup, (1.0 - model.eval(r)) / std::pow(r, model.gamma()));
  }
  return sup;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0 && hi > lo) || n < 2) {
    throw InputError("log_grid needs 0 < lo < hi and n >= 2");
  }
  std::vector<double> grid(n);
  const double step = std::log(hi / lo) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    grid[i] = lo * std::exp(step * static_cast<double>(i));
  }
  grid.back() = hi;
  return grid;
}

}  // namespace gsteady
