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

#include "polygibbs/rng.hpp"

#include <cmath>
#include <set>
#include <vector>

#include "gtest/gtest.h"

namespace polygibbs {
namespace {

// Known-answer vectors of the reference Philox4x32-10 implementation.
TEST(PhiloxTest, KnownAnswers) {
  EXPECT_EQ(philox4x32({0, 0, 0, 0}, {0, 0}),
            (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
  EXPECT_EQ(philox4x32({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff},
                       {0xffffffff, 0xffffffff}),
            (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
  EXPECT_EQ(philox4x32({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344},
                       {0xa4093822, 0x299f31d0}),
            (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(RngStreamTest, SameKeySameValues) {
  RngStream a(42, 7, 3), b(42, 7, 3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.uniform(), b.uniform());
  EXPECT_EQ(a.draw_index(), b.draw_index());
}

TEST(RngStreamTest, FirstDrawOffsetResumesStream) {
  RngStream a(42, 7, 3);
  a.uniform();
  a.uniform();
  const double third = a.uniform();
  RngStream b(42, 7, 3, a.draw_index() - 1);
  EXPECT_EQ(b.uniform(), third);
}

TEST(RngStreamTest, DistinctKeysDistinctStreams) {
  std::set<double> seen;
  for (std::uint64_t seed : {1u, 2u}) {
    for (std::uint64_t site : {0u, 1u, 1000u}) {
      for (std::uint64_t sweep : {0ull, 1ull, 1ull << 33}) {
        seen.insert(RngStream(seed, site, sweep).uniform());
      }
    }
  }
  EXPECT_EQ(seen.size(), 18u);
}

TEST(RngStreamTest, UniformMomentsAndBins) {
  constexpr int n = 200000, bins = 20;
  std::vector<int> counts(bins, 0);
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    RngStream s(9, static_cast<std::uint64_t>(i % 64), static_cast<std::uint64_t>(i / 64));
    const double u = s.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
    sum2 += u * u;
    ++counts[static_cast<int>(u * bins)];
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12 / n));
  EXPECT_NEAR(sum2 / n, 1.0 / 3, 4.0 * std::sqrt(4.0 / 45 / n));
  double chi2 = 0.0;
  const double expect = static_cast<double>(n) / bins;
  for (int c : counts) chi2 += (c - expect) * (c - expect) / expect;
  EXPECT_LT(chi2, 43.82);  // chi-square 19 dof, p = 0.001
}

}  // namespace
}  // namespace polygibbs
