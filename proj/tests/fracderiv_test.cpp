#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fracwave/error.hpp"
#include "fracwave/fracderiv.hpp"

using namespace fracwave;
using namespace fracwave::fracderiv;

TEST(Gamma, Values) {
  EXPECT_DOUBLE_EQ(gamma_fn(1.0), 1.0);
  EXPECT_NEAR(gamma_fn(1.5), 0.8862269254527580, 1e-12);
  EXPECT_THROW(gamma_fn(0.0), DomainError);
  EXPECT_THROW(gamma_fn(-3.0), DomainError);
  for (double x : {0.1, 0.5, 1.5, 7.3}) EXPECT_NEAR(gamma_fn(x + 1), x * gamma_fn(x), 1e-12 * gamma_fn(x + 1));
}

TEST(PowerRule, Values) {
  EXPECT_NEAR(mrl_power_rule(0.5, 1, 1), 2 / std::sqrt(std::numbers::pi), 1e-15);
  EXPECT_NEAR(mrl_power_rule(1, 2, 3), 6.0, 1e-12);
  EXPECT_NEAR(mrl_power_rule(0.3, 0.3, 0.7), gamma_fn(1.3), 1e-14);
  EXPECT_NEAR(mrl_power_rule(0.3, 0.3, 5.0), gamma_fn(1.3), 1e-14);
  EXPECT_THROW(mrl_power_rule(0.5, 0.2, 0.0), DomainError);
  for (double g : {1.0, 2.5, 3.0}) EXPECT_NEAR(mrl_power_rule(1, g, 1.7), g * std::pow(1.7, g - 1), 1e-12 * g);
}

TEST(Quadrature, MatchesPowerRule) {
  for (double a : {0.25, 0.5, 0.75}) {
    for (double g : {1.0, 2.0, 3.0}) {
      for (double z : {0.5, 1.0, 2.0}) {
        const double exact = mrl_power_rule(a, g, z);
        const double approx = mrl_quadrature([g](double s) { return std::pow(s, g); }, a, z);
        EXPECT_LT(std::abs(approx - exact) / std::abs(exact), 1e-4) << a << " " << g << " " << z;
      }
    }
  }
}

TEST(Quadrature, ConstantIsZero) {
  EXPECT_EQ(mrl_quadrature([](double) { return 4.2; }, 0.5, 1.0), 0.0);
}

TEST(Quadrature, Errors) {
  EXPECT_THROW(mrl_quadrature([](double s) { return s; }, 1.0, 1.0), InvalidArgument);
  EXPECT_THROW(mrl_quadrature([](double s) { return s; }, 0.5, 1.0, QuadratureSettings{4, 10, 1e-10}), InvalidArgument);
  EXPECT_THROW(mrl_quadrature([](double s) { return std::sin(1 / (s + 1e-9)); }, 0.5, 1.0, QuadratureSettings{8, 1, 1e-14}),
               ConvergenceError);
}

TEST(WaveCoordinate, Values) {
  TransformParams tp{2.0, 0.5, 1.0, 1.0, -1};
  EXPECT_NEAR(wave_coordinate(3.0, 4.0, tp), 2 * 3 - 0.5 * 4, 1e-15);
  EXPECT_NEAR(wave_coordinate(2, 3, TransformParams{1, 1.5, 1, 1, 1}), 2 + 3 * 1.5, 1e-15);
  EXPECT_NEAR(wave_coordinate(0, 1, TransformParams{1, 1, 0.5, 1, 1}), 1.1283791671, 1e-9);
  EXPECT_THROW(wave_coordinate(-1, 1, TransformParams{1, 1, 0.5, 0.5, 1}), DomainError);
  EXPECT_THROW(wave_coordinate(1, 1, TransformParams{1, 1, 1.5, 1, 1}), InvalidArgument);
  TransformParams f{1.3, 0.7, 0.6, 0.8, 1};
  const double d1 = wave_coordinate(2.0, 0.5, f) - wave_coordinate(1.0, 0.5, f);
  const double d2 = wave_coordinate(2.0, 3.0, f) - wave_coordinate(1.0, 3.0, f);
  EXPECT_NEAR(d1, d2, 1e-12);
}
