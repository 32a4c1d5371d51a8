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

#include "polygibbs/polynomial.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace polygibbs {
namespace {

Polynomial model1_unnormalized(int n) {
  return pow(Polynomial({1.0, 0.0, 1.0}), 2 * n + 1);
}

std::vector<double> probe_grid() {
  std::vector<double> xs;
  for (int i = -20; i <= 20; ++i) xs.push_back(0.15 * i + 0.01);
  return xs;
}

TEST(PolynomialTest, TrimsTrailingZeros) {
  EXPECT_EQ(Polynomial({1.0, 0.0, 0.0}).degree(), 0);
  EXPECT_EQ(Polynomial({0.0, 0.0}).degree(), -1);
  EXPECT_TRUE(Polynomial({0.0}).is_zero());
  EXPECT_EQ(Polynomial({2.0, 3.0, 5.0}).leading(), 5.0);
}

TEST(PolynomialTest, Model1Values) {
  const Polynomial F = model1_unnormalized(1);
  EXPECT_DOUBLE_EQ(F.eval(1.0, 0), 8.0);
  EXPECT_DOUBLE_EQ(F.eval(0.0, 2), 6.0);
  // 6 (1 + x^2)(1 + 5 x^2) written out.
  for (double x : probe_grid()) {
    EXPECT_NEAR(F.eval(x, 2), 6.0 * (1 + x * x) * (1 + 5 * x * x),
                1e-12 * (1 + std::abs(F.eval(x, 2))));
  }
  EXPECT_DOUBLE_EQ(Polynomial::monomial(1.0, 4)(0.0), 0.0);
}

TEST(PolynomialTest, DerivativesMatchCentralDifferences) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> c(1 + trial % 9);
    for (double& v : c) v = coef(gen);
    const Polynomial p(c);
    for (double x : probe_grid()) {
      for (int order = 0; order < 2; ++order) {
        const double h = 1e-5 * std::max(1.0, std::abs(x));
        const double fd = (p.eval(x + h, order) - p.eval(x - h, order)) / (2 * h);
        const double exact = p.eval(x, order + 1);
        const double scale = std::max({1.0, std::abs(exact), std::abs(p.eval(x, order))});
        EXPECT_NEAR(fd, exact, 1e-6 * scale) << "trial " << trial << " x " << x;
      }
    }
  }
}

TEST(PolynomialTest, JetAgreesWithEval) {
  const Polynomial p({0.5, -1.0, 2.0, 0.25, -0.125});
  for (double x : probe_grid()) {
    const auto j = p.jet(x);
    EXPECT_DOUBLE_EQ(j.value, p.eval(x, 0));
    EXPECT_NEAR(j.first, p.eval(x, 1), 1e-12 * (1 + std::abs(j.first)));
    EXPECT_NEAR(j.second, p.eval(x, 2), 1e-12 * (1 + std::abs(j.second)));
  }
}

TEST(PolynomialTest, ShiftReflectAndScaledShift) {
  const Polynomial g({1.0, 2.0, 0.0, -3.0, 0.5});
  const Polynomial s = g.shifted(0.7);
  const Polynomial r = g.reflected();
  Polynomial acc({4.0, -1.0});
  acc.add_scaled_shifted(g, 1.3, -0.02);
  for (double x : probe_grid()) {
    const double tol = 1e-11 * (1 + std::abs(g(x + 0.7)));
    EXPECT_NEAR(s(x), g(x + 0.7), tol);
    EXPECT_DOUBLE_EQ(r(x), g(-x));
    EXPECT_NEAR(acc(x), 4.0 - x - 0.02 * g(x - 1.3), 1e-11 * (1 + std::abs(g(x - 1.3))));
  }
}

TEST(PolynomialTest, RealRoots) {
  const Polynomial p = Polynomial({-1.0, 1.0}) * Polynomial({2.0, 1.0}) *
                       Polynomial({-3.0, 1.0});
  const auto roots = p.real_roots();
  ASSERT_EQ(roots.size(), 3u);
  EXPECT_NEAR(roots[0], -2.0, 1e-12);
  EXPECT_NEAR(roots[1], 1.0, 1e-12);
  EXPECT_NEAR(roots[2], 3.0, 1e-12);
  EXPECT_TRUE(Polynomial({1.0, 0.0, 1.0}).real_roots().empty());
  // F''' of Model 1 n=1 vanishes only at 0.
  const auto crit = model1_unnormalized(1).derivative().derivative().derivative().real_roots();
  ASSERT_EQ(crit.size(), 1u);
  EXPECT_NEAR(crit[0], 0.0, 1e-12);
}

TEST(PolynomialTest, Arithmetic) {
  const Polynomial a({1.0, 1.0});
  EXPECT_EQ(pow(a, 2), Polynomial({1.0, 2.0, 1.0}));
  EXPECT_EQ(a - a, Polynomial());
  EXPECT_EQ(2.0 * a, Polynomial({2.0, 2.0}));
  EXPECT_EQ(pow(a, 0), Polynomial::constant(1.0));
}

}  // namespace
}  // namespace polygibbs
