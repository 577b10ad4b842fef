#pragma once

#include <map>
#include <span>
#include <vector>

#include "gsteady/ensemble.hpp"

namespace gsteady {

/// Empirical moments m_p = (1/N) sum |v_i|^{2p}.
struct MomentReport {
  std::map<double, double> m;  ///< p -> m_p; always contains p = 0
  double temperature = 0.0;    ///< m_1 / 3

  double at(double p) const { return m.at(p); }
};

inline constexpr double kDefaultMomentOrders[] = {1.0, 1.5, 2.0, 3.0};

MomentReport moments(const Ensemble& ensemble, std::span<const double> orders = kDefaultMomentOrders);

struct TailReport {
  double rate = 0.0;       ///< A
  double value = 0.0;      ///< (1/N) sum exp(A |v_i|^{3/2})
  double max_share = 0.0;  ///< largest single-particle share of the sum
};

TailReport tail_integral(const Ensemble& ensemble, double rate);

/// (2 Theta)^p Gamma(p + 3/2) / Gamma(3/2): m_p of the Maxwellian of temperature Theta.
double maxwell_moment(double p, double theta);

/// P(|V| <= s) for V ~ N(0, Theta I_3).
double maxwell_speed_cdf(double s, double theta);

/// E exp(A |V|^{3/2}) for V ~ N(0, Theta I_3), by quadrature.
double maxwell_tail_integral(double rate, double theta);

struct MaxwellianDistance {
  double d_moment = 0.0;  ///< sum over p in {1, 3/2, 2, 3} of relative moment errors
  double d_hist = 0.0;    ///< L1 distance of the speed histogram, in [0, 2]
};

/// Computable surrogates for the distance to the Maxwellian of temperature
/// Theta: relative moment errors and the L1 distance between the empirical
/// speed distribution (64 bins on [0, 5 sqrt(Theta)] plus an overflow bin)
/// and the exact Maxwell speed law.
MaxwellianDistance maxwellian_distance(const Ensemble& ensemble, double theta);

}  // namespace gsteady
