#pragma once

#include <cstddef>
#include <vector>

namespace gsteady {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  explicit GaussLegendre(std::size_t n);

  std::size_t size() const noexcept { return nodes.size(); }

  /// Integrate f over [lo, hi].
  template <class F>
  double integrate(F&& f, double lo, double hi) const {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      sum += weights[i] * f(mid + half * nodes[i]);
    }
    return half * sum;
  }
};

/// Product rule on the unit sphere around an axis: periodic trapezoid in the
/// azimuth, and in the polar cosine s = axis . sigma the graded rule
/// s = 1 - 2 w^4 with Gauss-Legendre in w on [0, 1]. The grading clusters
/// nodes at s = 1, where the impact speed |u| sqrt((1 - s)/2) = |u| w^2
/// vanishes and restitution laws are non-smooth.
struct AngularQuadrature {
  std::vector<double> cosines;  ///< s nodes in (-1, 1)
  std::vector<double> weights;  ///< sum to 2
  std::size_t n_phi;

  explicit AngularQuadrature(std::size_t n_sigma = 64, std::size_t n_phi = 32);
  std::size_t polar_size() const noexcept { return cosines.size(); }
};

}  // namespace gsteady
