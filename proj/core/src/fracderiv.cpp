#include "fracwave/fracderiv.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fracwave/error.hpp"

namespace fracwave::fracderiv {

namespace {

constexpr int kGaussOrder = 10;

struct GaussRule {
  std::array<double, kGaussOrder> nodes{};
  std::array<double, kGaussOrder> weights{};
};

// Gauss-Legendre rule on [-1, 1] by Newton iteration on P_n.
GaussRule make_gauss_rule() {
  GaussRule rule;
  constexpr int n = kGaussOrder;
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

/// Composite Gauss-Legendre over [0,1] on panels clustered toward both ends.
template <typename F>
double graded_integral(F&& integrand, int panels) {
  const auto& rule = gauss_rule();
  double sum = 0.0;
  auto edge = [panels](int j) { return 0.5 * (1.0 - std::cos(std::numbers::pi * j / panels)); };
  for (int j = 0; j < panels; ++j) {
    const double a = edge(j);
    const double b = edge(j + 1);
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double panel = 0.0;
    for (int i = 0; i < kGaussOrder; ++i) panel += rule.weights[i] * integrand(mid + half * rule.nodes[i]);
    sum += half * panel;
  }
  return sum;
}

/// F(z) = integral_0^z (z - s)^(-alpha) (f(s) - f(0)) ds, after s = z*u and
/// 1 - u = v^m with m = 1/(1-alpha), which removes the endpoint singularity:
/// F(z) = m z^(1-alpha) integral_0^1 g(z (1 - v^m)) dv.
double regularized_integral(const std::function<double(double)>& f, double f0, double alpha, double z,
                            int panels) {
  const double m = 1.0 / (1.0 - alpha);
  const double inner = graded_integral([&](double v) { return f(z * (1.0 - std::pow(v, m))) - f0; }, panels);
  return m * std::pow(z, 1.0 - alpha) * inner;
}

/// dF/dz by Richardson-extrapolated central differences of the smooth
/// parametric integral.
double derivative_of_integral(const std::function<double(double)>& f, double f0, double alpha, double z,
                              int panels) {
  constexpr int levels = 4;
  std::array<std::array<double, levels>, levels> table{};
  double h = 0.1 * z;
  for (int i = 0; i < levels; ++i) {
    const double fp = regularized_integral(f, f0, alpha, z + h, panels);
    const double fm = regularized_integral(f, f0, alpha, z - h, panels);
    table[i][0] = (fp - fm) / (2.0 * h);
    double factor = 4.0;
    for (int j = 1; j <= i; ++j) {
      table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0);
      factor *= 4.0;
    }
    h *= 0.5;
  }
  return table[levels - 1][levels - 1];
}

}  // namespace

void QuadratureSettings::validate() const {
  if (panels < 8) throw InvalidArgument("quadrature panels must be >= 8");
  if (max_refinements < 1) throw InvalidArgument("quadrature max_refinements must be positive");
  if (!(rel_tol > 0.0)) throw InvalidArgument("quadrature rel_tol must be positive");
}

void TransformParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InvalidArgument("alpha must lie in (0, 1]");
  if (!(beta > 0.0 && beta <= 1.0)) throw InvalidArgument("beta must lie in (0, 1]");
  if (k == 0.0) throw InvalidArgument("wave number k must be non-zero");
  if (sign != 1 && sign != -1) throw InvalidArgument("transform sign must be +1 or -1");
}

double gamma_fn(double x) {
  if (std::isnan(x)) throw DomainError("gamma of NaN");
  if (x <= 0.0 && x == std::floor(x)) throw DomainError("gamma pole at " + std::to_string(x));
  return std::tgamma(x);
}

double mrl_power_rule(double alpha, double gamma, double z) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  if (!(gamma > 0.0)) throw InvalidArgument("power gamma must be positive");
  if (z < 0.0) throw InvalidArgument("z must be non-negative");
  const double shifted = 1.0 + gamma - alpha;
  if (shifted <= 0.0 && shifted == std::floor(shifted)) {
    throw DomainError("gamma pole at 1 + gamma - alpha = " + std::to_string(shifted));
  }
  const double ratio = gamma_fn(1.0 + gamma) / gamma_fn(shifted);
  if (z == 0.0) {
    if (gamma < alpha) throw DomainError("power rule is singular at z = 0 when gamma < alpha");
    return gamma == alpha ? ratio : 0.0;
  }
  return ratio * std::pow(z, gamma - alpha);
}

double mrl_quadrature(const std::function<double(double)>& f, double alpha, double z,
                      const QuadratureSettings& settings) {
  settings.validate();
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("quadrature requires 0 < alpha < 1");
  if (!(z > 0.0)) throw InvalidArgument("quadrature requires z > 0");
  const double f0 = f(0.0);
  if (!std::isfinite(f0)) throw DomainError("f(0) is not finite");
  const double scale = 1.0 / gamma_fn(1.0 - alpha);

  int panels = settings.panels;
  double previous = scale * derivative_of_integral(f, f0, alpha, z, panels);
  for (int r = 0; r < settings.max_refinements; ++r) {
    panels *= 2;
    const double current = scale * derivative_of_integral(f, f0, alpha, z, panels);
    if (!std::isfinite(current)) throw ConvergenceError("quadrature produced a non-finite value");
    if (std::abs(current - previous) <= settings.rel_tol * std::max(std::abs(current), 1e-300) ||
        current == previous) {
      return current;
    }
    previous = current;
  }
  throw ConvergenceError("fractional quadrature did not reach rel_tol within " +
                         std::to_string(settings.max_refinements) + " refinements");
}

double wave_coordinate(double x, double t, const TransformParams& tp) {
  tp.validate();
  if (t < 0.0) throw InvalidArgument("time must be non-negative");
  if (x < 0.0 && tp.beta != 1.0) throw DomainError("negative x with fractional order beta");
  const double xp = tp.beta == 1.0 ? x : std::pow(x, tp.beta);
  const double tpow = tp.alpha == 1.0 ? t : std::pow(t, tp.alpha);
  return tp.k * xp / gamma_fn(1.0 + tp.beta) + tp.sign * tp.c * tpow / gamma_fn(1.0 + tp.alpha);
}

}  // namespace fracwave::fracderiv
