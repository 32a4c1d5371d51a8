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

#include "polygibbs/lattice.hpp"

#include <cmath>

#include "gtest/gtest.h"
#include "polygibbs/error.hpp"

namespace polygibbs {
namespace {

const Displacement kPlus{{1}};
const Displacement kMinus{{-1}};

std::vector<Displacement> nearest(int dim) {
  std::vector<Displacement> out;
  for (int i = 0; i < dim; ++i) {
    std::vector<int> c(static_cast<std::size_t>(dim), 0);
    c[static_cast<std::size_t>(i)] = 1;
    out.push_back(Displacement{c});
    c[static_cast<std::size_t>(i)] = -1;
    out.push_back(Displacement{c});
  }
  return out;
}

TEST(LatticeTest, CoordinatesRoundTrip) {
  const LatticeSpec lat = build_lattice(3, {3, 4, 5}, Boundary::kFree, nearest(3));
  EXPECT_EQ(lat.site_count(), 60u);
  for (std::size_t k = 0; k < lat.site_count(); ++k) {
    EXPECT_EQ(lat.site_of(lat.coords(k)), k);
  }
  EXPECT_EQ(lat.coords(1), (std::vector<int>{0, 0, 1}));
}

TEST(LatticeTest, TorusNeighboursWrap) {
  const LatticeSpec lat = build_lattice(1, {16}, Boundary::kTorus, {kMinus, kPlus});
  ASSERT_EQ(lat.neighbors[0].size(), 2u);
  // Through displacement j the neighbour of k is k - j.
  EXPECT_EQ(lat.neighbors[0][0].site, 1u);
  EXPECT_EQ(lat.neighbors[0][1].site, 15u);
  EXPECT_EQ(lat.translate(15, kPlus), 0u);
}

TEST(LatticeTest, FreeBoundaryDropsPairs) {
  const LatticeSpec lat = build_lattice(1, {5}, Boundary::kFree, {kMinus, kPlus});
  EXPECT_EQ(lat.neighbors[0].size(), 1u);
  EXPECT_EQ(lat.neighbors[2].size(), 2u);
  EXPECT_EQ(lat.translate(4, kPlus), Neighbor::kShell);
}

TEST(LatticeTest, FixedBoundaryUsesShell) {
  const LatticeSpec lat = build_lattice(2, {3, 3}, Boundary::kFixed, nearest(2),
                                        constant_shell(2, {3, 3}, 1, 0.75));
  EXPECT_EQ(lat.shell.size(), 25u);
  int shell_links = 0;
  for (const auto& row : lat.neighbors) {
    EXPECT_EQ(row.size(), 4u);
    for (const Neighbor& n : row) {
      if (n.in_shell()) {
        ++shell_links;
        EXPECT_EQ(n.shell_value, 0.75);
      }
    }
  }
  EXPECT_EQ(shell_links, 12);
  EXPECT_THROW(build_lattice(1, {3}, Boundary::kFixed, {kPlus}, {0.0}), ConfigError);
}

TEST(LatticeTest, WrapViolation) {
  EXPECT_THROW(build_lattice(1, {2}, Boundary::kTorus, {kMinus, kPlus}), ConfigError);
  EXPECT_NO_THROW(build_lattice(1, {3}, Boundary::kTorus, {kMinus, kPlus}));
  EXPECT_THROW(build_lattice(1, {4}, Boundary::kTorus, {Displacement{{2}}}), ConfigError);
}

TEST(DobrushinTest, Model1Threshold) {
  const ModelSpec m = build_model1(1, 1, {{kPlus, 1.0}, {kMinus, 1.0}}, 0.02);
  const DobrushinReport r = uniqueness_threshold(m, Semimetric{0.0});
  EXPECT_NEAR(r.gamma_d, 4.0 / std::sqrt(5.0), 1e-6);
  EXPECT_NEAR(r.threshold, std::sqrt(5.0) / 4.0, 1e-6);
  EXPECT_GE(r.threshold, 1.0 / 32.0);
  EXPECT_TRUE(r.unique);
  const DobrushinReport w = uniqueness_threshold(m, Semimetric{0.5});
  EXPECT_NEAR(w.gamma_d, std::exp(0.5) * r.gamma_d, 1e-12);
}

TEST(DobrushinTest, OutsideRegionAndZeroLambda) {
  EXPECT_FALSE(uniqueness_threshold(build_model1(1, 1, {{kPlus, 1.0}, {kMinus, 1.0}}, 10.0),
                                    Semimetric{})
                   .unique);
  EXPECT_TRUE(uniqueness_threshold(build_model1(1, 1, {{kPlus, 1.0}, {kMinus, 1.0}}, 0.0),
                                   Semimetric{})
                  .unique);
  const DobrushinReport none = uniqueness_threshold(build_model1(1, 1, {}, 0.3), Semimetric{});
  EXPECT_EQ(none.gamma_d, 0.0);
  EXPECT_TRUE(std::isinf(none.threshold));
}

TEST(DobrushinTest, GaussianRowSum) {
  const ModelSpec m = build_gaussian(1.0, 1, {{kPlus, 1.0}, {kMinus, 1.0}}, 0.1);
  const DobrushinReport r = uniqueness_threshold(m, Semimetric{});
  EXPECT_NEAR(r.gamma_d, 4.0, 1e-12);
  EXPECT_NEAR(m.lambda * r.gamma_d, 0.4, 1e-12);
  EXPECT_NEAR(weighted_b_norm(m, Semimetric{0.5}), 2.0 * std::exp(0.5), 1e-12);
}

TEST(DobrushinTest, FailingConditionsThrow) {
  const ModelSpec m = make_model(1, Polynomial({0.0, 0.0, 1.0}),
                                 {{kPlus, Polynomial::monomial(1.0, 3)}}, 0.1);
  EXPECT_THROW(uniqueness_threshold(m, Semimetric{}), ConditionError);
}

TEST(GaussianOracleTest, TwoSiteFreeClosedForm) {
  // H = x0^2/2 + x1^2/2 + 0.1 (x0 - x1)^2, covariance [[1.2, -0.2], [-0.2, 1.2]]^-1.
  const ModelSpec m = build_gaussian(1.0, 1, {{kPlus, 1.0}, {kMinus, 1.0}}, 0.1);
  const LatticeSpec lat = build_lattice(1, {2}, Boundary::kFree, m.displacements());
  const Eigen::MatrixXd c = gaussian_covariance_oracle(m, lat);
  EXPECT_NEAR(c(0, 0), 1.2 / 1.4, 1e-14);
  EXPECT_NEAR(c(0, 1), 0.2 / 1.4, 1e-14);
  EXPECT_NEAR(c(1, 1), 1.2 / 1.4, 1e-14);
}

TEST(GaussianOracleTest, IndependentSites) {
  const ModelSpec m = build_gaussian(2.0, 2, {}, 0.0);
  const LatticeSpec lat = build_lattice(2, {4, 4}, Boundary::kTorus, {});
  const Eigen::MatrixXd c = gaussian_covariance_oracle(m, lat);
  EXPECT_TRUE(c.isApprox(0.5 * Eigen::MatrixXd::Identity(16, 16), 1e-14));
}

TEST(GaussianOracleTest, TorusTranslationInvariance) {
  const ModelSpec m = build_gaussian(1.0, 1, {{kPlus, 1.0}, {kMinus, 1.0}}, 0.1);
  const LatticeSpec lat = build_lattice(1, {16}, Boundary::kTorus, m.displacements());
  const Eigen::MatrixXd c = gaussian_covariance_oracle(m, lat);
  for (int i = 0; i < 16; ++i) {
    for (int k = 0; k < 16; ++k) {
      EXPECT_NEAR(c(i, (i + k) % 16), c(0, k), 1e-13);
    }
  }
  // Precision is circulant with diagonal 1.4 and off-diagonal -0.2; the
  // infinite-lattice covariance at 0 is 1 / sqrt(1.4^2 - 0.4^2).
  EXPECT_NEAR(c(0, 0), 1.0 / std::sqrt(1.4 * 1.4 - 0.4 * 0.4), 1e-9);
}

TEST(GaussianOracleTest, FixedShellAddsDiagonal) {
  const ModelSpec m = build_gaussian(1.0, 1, {{kPlus, 1.0}, {kMinus, 1.0}}, 0.1);
  const LatticeSpec lat = build_lattice(1, {1}, Boundary::kFixed, m.displacements(),
                                        constant_shell(1, {1}, 1, 2.0));
  EXPECT_NEAR(gaussian_covariance_oracle(m, lat)(0, 0), 1.0 / 1.4, 1e-14);
}

TEST(GaussianOracleTest, RejectsNonGaussian) {
  const ModelSpec m = build_model1(1, 1, {{kPlus, 1.0}, {kMinus, 1.0}}, 0.1);
  const LatticeSpec lat = build_lattice(1, {4}, Boundary::kTorus, m.displacements());
  EXPECT_THROW(gaussian_covariance_oracle(m, lat), ConfigError);
}

}  // namespace
}  // namespace polygibbs
