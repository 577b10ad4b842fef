#pragma once

#include <span>
#include <string>
#include <vector>

namespace gsteady {

enum class RestitutionKind { Constant, PowerLaw, ViscoelasticImplicit };

std::string to_string(RestitutionKind kind);
RestitutionKind restitution_kind_from_string(const std::string& name);

/// A restitution law r -> e(r) for impact speed r >= 0, with its small-r
/// expansion e(r) ~ 1 - a r^gamma + O(r^gamma_bar).
///
/// Kinds:
///  - Constant:   e(r) = e0. Carries a = 1 - e0 and gamma = 0.
///  - PowerLaw:   e(r) = 1 / (1 + a r^gamma), gamma in (0, 1]; gamma_bar = 2 gamma.
///  - ViscoelasticImplicit: the root e in (0, 1] of e + a r^{1/5} e^{3/5} = 1;
///    gamma = 1/5, gamma_bar = 2/5.
///
/// Every kind is pre-composed with a rescale factor lambda_scale in (0, 1]:
/// eval(r) = e_base(lambda_scale * r). Models are immutable values.
class RestitutionModel {
 public:
  static RestitutionModel constant(double e0);
  static RestitutionModel elastic() { return constant(1.0); }
  static RestitutionModel power_law(double a, double gamma);
  static RestitutionModel viscoelastic(double a);

  /// e(r). Throws InputError for negative or non-finite r.
  double eval(double r) const;
  double operator()(double r) const { return eval(r); }

  /// (1 + e(r)) / 2.
  double beta(double r) const { return 0.5 * (1.0 + eval(r)); }

  /// 1 - e(r)^2 without cancellation when e(r) is close to 1.
  double one_minus_e_squared(double r) const;

  /// r e(r), strictly increasing for every admissible model.
  double theta_map(double r) const { return r * eval(r); }

  /// The model r -> e(lambda r); rescales compose multiplicatively.
  RestitutionModel rescaled(double lambda) const;

  /// Same law with lambda_scale reset to 1.
  RestitutionModel base() const;

  RestitutionKind kind() const noexcept { return kind_; }
  double e0() const noexcept { return e0_; }
  double a() const noexcept { return a_; }
  double gamma() const noexcept { return gamma_; }
  double gamma_bar() const noexcept { return gamma_bar_; }
  double lambda_scale() const noexcept { return lambda_; }
  bool is_elastic() const noexcept { return kind_ == RestitutionKind::Constant && e0_ == 1.0; }

 private:
  RestitutionModel(RestitutionKind kind, double e0, double a, double gamma, double gamma_bar)
      : kind_(kind), e0_(e0), a_(a), gamma_(gamma), gamma_bar_(gamma_bar) {}

  double eval_unscaled(double r) const;

  RestitutionKind kind_;
  double e0_;
  double a_;
  double gamma_;
  double gamma_bar_;
  double lambda_ = 1.0;
};

/// Root of e + c e^{3/5} = 1 on (0, 1], c >= 0.
double solve_viscoelastic(double c);

/// sup over the grid of (1 - e(r)) / r^gamma, with gamma the model exponent.
double ell_gamma(const RestitutionModel& model, std::span<const double> grid);

/// n log-spaced points in [lo, hi].
std::vector<double> log_grid(double lo, double hi, std::size_t n);

}  // namespace gsteady
