/* Copyright 2026 The polygibbs Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "polygibbs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "polygibbs/error.hpp"
#include "polygibbs/potentials.hpp"
#include "polygibbs/rng.hpp"

namespace polygibbs {
namespace {

// Values computed independently with mpmath (50 digits) under exp(-F),
// F = (1 + x^2)^3 - 1.
constexpr double kModel1SecondMoment = 0.103197517966778;
constexpr double kModel1ExpSquare = 1.11844940558269;
constexpr double kModel1RhoAtOne = 4.55267817270977;

SelfPotential model1_F() { return make_self_potential(build_model1(1, 1, {}, 0.0).F); }

SelfPotential gaussian_F(double eps) {
  return make_self_potential(Polynomial({0.0, 0.0, eps / 2.0}));
}

// Composite trapezoid rule of g exp(ld) over [-a, a] with n cells.
double trapezoid(const Polynomial& ld, const RealFunction& g, double a, int n) {
  const double h = 2 * a / n;
  double num = 0.0, den = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = -a + h * i;
    const double w = (i == 0 || i == n ? 0.5 : 1.0) * std::exp(ld(x));
    num += w * g(x);
    den += w;
  }
  return num / den;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_statistic(std::vector<double> xs, const RealFunction& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double c = cdf(xs[i]);
    d = std::max({d, c - i / n, (i + 1) / n - c});
  }
  return d;
}

TEST(FindModeTest, ShiftedQuartic) {
  // -(x - 1.5)^4 - (x - 1.5)^2
  Polynomial ld;
  ld.add_scaled_shifted(Polynomial({0.0, 0.0, 1.0, 0.0, 1.0}), 1.5, -1.0);
  EXPECT_NEAR(find_mode(ld, -10.0), 1.5, 1e-10);
}

TEST(TruncateTest, TailBelowToleranceByTrapezoid) {
  const Density1D d = density_of(model1_F(), 1e-12);
  EXPECT_LE(d.tail_mass_bound, 1e-12);
  // Independent check of the mass outside [lo, hi] relative to inside.
  const Polynomial ld = d.log_density;
  double inside = 0.0, outside = 0.0;
  const int n = 400000;
  const double a = 6.0, h = 2 * a / n;
  for (int i = 0; i <= n; ++i) {
    const double x = -a + h * i;
    const double w = std::exp(ld(x) - d.log_peak) * h;
    (x < d.lo || x > d.hi ? outside : inside) += w;
  }
  EXPECT_LE(outside / inside, 1e-12);
  EXPECT_GT(d.hi, 1.0);
  EXPECT_LT(d.hi, 3.0);
}

TEST(TruncateTest, EnvelopeFailure) {
  EXPECT_THROW(truncate(Polynomial({0.0, 0.0, -0.5}), 0.0, 0.0), NumericError);
}

TEST(IntegrateTest, Model1MomentsAgainstOracle) {
  const Density1D d = density_of(model1_F());
  const auto x2 = integrate(d, [](double x) { return x * x; });
  EXPECT_NEAR(x2.value, kModel1SecondMoment, 1e-11);
  EXPECT_LE(x2.abs_error_estimate, 1e-8);
  EXPECT_NEAR(integrate(d, [](double x) { return std::exp(x * x); }).value,
              kModel1ExpSquare, 1e-11);
  EXPECT_NEAR(integrate(d, [](double x) { return x; }).value, 0.0, 1e-13);
}

TEST(IntegrateTest, GaussianMoments) {
  // The default tail tolerance biases the fourth moment by about 2e-9;
  // a tighter truncation removes it.
  const Density1D d = density_of(gaussian_F(1.0));
  EXPECT_NEAR(integrate(d, [](double x) { return x * x; }).value, 1.0, 1e-10);
  EXPECT_NEAR(integrate(d, [](double x) { return x * x * x * x; }).value, 3.0, 1e-8);
  const Density1D tight = density_of(gaussian_F(1.0), 1e-16);
  EXPECT_NEAR(integrate(tight, [](double x) { return x * x; }).value, 1.0, 1e-12);
  EXPECT_NEAR(integrate(tight, [](double x) { return x * x * x * x; }).value, 3.0, 1e-11);
}

TEST(IntegrateTest, AgreesWithTrapezoidOracle) {
  // Skewed density: -x^4/4 - x^2 + x
  Polynomial ld({0.0, 1.0, -1.0, 0.0, -0.25});
  const Density1D d = make_density(ld, 2.0);
  for (const RealFunction& g : std::vector<RealFunction>{
           [](double x) { return x; }, [](double x) { return std::cos(3 * x); },
           [](double x) { return std::tanh(x) * x * x; }}) {
    EXPECT_NEAR(integrate(d, g).value, trapezoid(ld, g, 8.0, 200000), 1e-9);
  }
}

TEST(IntegrateTest, ManyMatchesSingle) {
  const Density1D d = density_of(model1_F());
  const std::vector<RealFunction> gs = {[](double x) { return x * x; },
                                        [](double x) { return std::tanh(x); }};
  const auto many = integrate_many(d, gs);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    EXPECT_NEAR(many[i].value, integrate(d, gs[i]).value, 1e-13);
  }
}

TEST(IntegrateTest, NonConvergentThrows) {
  const Density1D d = density_of(gaussian_F(1.0));
  QuadratureOptions tight;
  tight.max_nodes = 256;
  EXPECT_THROW(integrate(d, [](double x) { return std::cos(400 * x) + x; }, tight),
               NumericError);
}

TEST(IntegrateIntervalTest, RhoAtOne) {
  EXPECT_NEAR(cumulative_rho(model1_F(), 1.0), kModel1RhoAtOne, 1e-11);
  EXPECT_NEAR(cumulative_rho(model1_F(), -1.0), -kModel1RhoAtOne, 1e-11);
  EXPECT_NEAR(cumulative_rho(gaussian_F(4.0), 3.0), 6.0, 1e-12);
}

TEST(QuantileTest, InvertsTheCdf) {
  const Density1D d = density_of(model1_F());
  EXPECT_NEAR(quantile(d, 0.5), 0.0, 1e-9);
  double prev = -1e300;
  for (double u : {1e-9, 0.01, 0.2, 0.5, 0.77, 0.999, 1 - 1e-9}) {
    const double x = quantile(d, u);
    EXPECT_GT(x, prev);
    prev = x;
    const double mass = integrate_interval([&](double t) { return d.scaled(t); }, d.lo, x).value;
    const double total =
        integrate_interval([&](double t) { return d.scaled(t); }, d.lo, d.hi).value;
    EXPECT_NEAR(mass / total, u, 1e-9);
  }
}

TEST(QuantileTest, ShiftEquivariance) {
  const Polynomial base({0.0, 0.3, -1.0, 0.0, -0.5});
  const Density1D d = make_density(base, 2.0);
  for (double c : {-2.5, 0.7, 4.0}) {
    Polynomial shifted;
    shifted.add_scaled_shifted(base, c, 1.0);
    const Density1D ds = make_density(shifted, 2.0, kDefaultTailTolerance, c);
    for (double u : {0.001, 0.3, 0.5, 0.9, 0.9999}) {
      EXPECT_NEAR(quantile(ds, u), quantile(d, u) + c, 1e-8);
    }
  }
}

TEST(SampleTest, GaussianKolmogorovSmirnov) {
  const Density1D d = density_of(gaussian_F(1.0));
  std::vector<double> xs;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    RngStream rng(3, i, 0);
    xs.push_back(sample_logconcave(d, rng));
  }
  // Critical value 1.628 / sqrt(n) at significance 0.01.
  EXPECT_LT(ks_statistic(xs, normal_cdf), 1.628 / std::sqrt(20000.0));
}

TEST(SampleTest, Model1KolmogorovSmirnov) {
  const Density1D d = density_of(model1_F());
  std::vector<double> xs;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    RngStream rng(4, i, 1);
    xs.push_back(sample_logconcave(d, rng));
  }
  // CDF by the trapezoid rule on a fine grid.
  const int n = 200000;
  const double a = d.hi, h = 2 * a / n;
  std::vector<double> cdf(n + 1, 0.0);
  for (int i = 1; i <= n; ++i) {
    const double x0 = -a + h * (i - 1), x1 = x0 + h;
    cdf[i] = cdf[i - 1] + 0.5 * h * (d.scaled(x0) + d.scaled(x1));
  }
  const RealFunction F = [&](double x) {
    const double t = std::clamp((x + a) / h, 0.0, static_cast<double>(n));
    const int i = std::min(static_cast<int>(t), n - 1);
    return (cdf[i] + (t - i) * (cdf[i + 1] - cdf[i])) / cdf[n];
  };
  EXPECT_LT(ks_statistic(xs, F), 1.628 / std::sqrt(20000.0));
}

TEST(SampleTest, ConsumesOneUniform) {
  const Density1D d = density_of(model1_F());
  RngStream a(8, 1, 2), b(8, 1, 2);
  EXPECT_EQ(sample_logconcave(d, a), quantile(d, b.uniform()));
  EXPECT_EQ(a.draw_index(), 1u);
}

TEST(MaximizeTest, InteriorMaximum1D) {
  const Maximum1D m = maximize_1d([](double x) { return std::exp(-(x - 1.2) * (x - 1.2)); });
  EXPECT_NEAR(m.x, 1.2, 1e-6);
  EXPECT_NEAR(m.value, 1.0, 1e-12);
}

TEST(MaximizeTest, FiniteLimitAtInfinity) {
  const Maximum1D m = maximize_1d([](double x) { return x * x / (1 + x * x); });
  EXPECT_NEAR(m.value, 1.0, 1e-6);
  EXPECT_TRUE(m.on_boundary);
}

TEST(MaximizeTest, DivergenceDetected) {
  EXPECT_THROW(maximize_1d([](double x) { return std::abs(x); }), NumericError);
  EXPECT_THROW(maximize_ratio([](double x, double y) { return (x - y) * (x - y); }),
               NumericError);
}

TEST(MaximizeTest, InteriorMaximum2D) {
  const Maximum2D m = maximize_ratio([](double x, double y) {
    return std::exp(-(x - 0.5) * (x - 0.5) - (y + 2) * (y + 2));
  });
  EXPECT_NEAR(m.x, 0.5, 1e-5);
  EXPECT_NEAR(m.y, -2.0, 1e-5);
  EXPECT_NEAR(m.value, 1.0, 1e-10);
  EXPECT_FALSE(m.on_boundary);
}

}  // namespace
}  // namespace polygibbs
