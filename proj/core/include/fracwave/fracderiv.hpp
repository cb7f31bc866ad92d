#pragma once

#include <functional>

namespace fracwave::fracderiv {

/// Discretization controls for the weakly singular quadrature.
struct QuadratureSettings {
  int panels = 16;           // initial panel count, >= 8
  int max_refinements = 10;  // panel-count doublings allowed
  double rel_tol = 1e-10;    // target relative change between refinements

  void validate() const;
};

/// Parameters of the fractional complex transform
/// xi = k x^beta / Gamma(1+beta) + sign * c t^alpha / Gamma(1+alpha).
struct TransformParams {
  double k = 1.0;
  double c = 0.0;
  double alpha = 1.0;
  double beta = 1.0;
  int sign = -1;

  void validate() const;
};

/// Gamma function; throws DomainError at the poles 0, -1, -2, ...
double gamma_fn(double x);

/// Power rule of the modified Riemann-Liouville derivative: D^alpha z^gamma = Gamma(1+gamma)/Gamma(1+gamma-alpha) z^(gamma-alpha).
double mrl_power_rule(double alpha, double gamma, double z);

/// Modified Riemann-Liouville derivative of order alpha in (0,1) of the
/// sampled function f at z > 0, evaluated by quadrature.
double mrl_quadrature(const std::function<double(double)>& f, double alpha, double z,
                      const QuadratureSettings& settings = {});

/// Traveling-wave coordinate xi(x, t).
double wave_coordinate(double x, double t, const TransformParams& tp);

}  // namespace fracwave::fracderiv
