#include "gsteady/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "gsteady/error.hpp"

namespace gsteady {

GaussLegendre::GaussLegendre(std::size_t n) : nodes(n), weights(n) {
  if (n < 2) {
    throw InputError("Gauss-Legendre rule needs at least 2 nodes");
  }
  // Newton iteration on P_n from the Tricomi initial guess; nodes come in
  // symmetric pairs.
  const std::size_t half = (n + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) {
        break;
      }
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (std::size_t k = 2; k <= n; ++k) {
      const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
      p0 = p1;
      p1 = pk;
    }
    dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    nodes[n / 2] = 0.0;
  }
}

AngularQuadrature::AngularQuadrature(std::size_t n_sigma, std::size_t n_phi_) : n_phi(n_phi_) {
  if (n_phi < 1) {
    throw InputError("azimuthal rule needs at least 1 node");
  }
  const GaussLegendre rule(n_sigma);
  cosines.resize(n_sigma);
  weights.resize(n_sigma);
  for (std::size_t i = 0; i < n_sigma; ++i) {
    const double w = 0.5 * (rule.nodes[i] + 1.0);
    const double w2 = w * w;
    cosines[i] = 1.0 - 2.0 * w2 * w2;
    weights[i] = 0.5 * rule.weights[i] * 8.0 * w2 * w;
  }
}

}  // namespace gsteady
