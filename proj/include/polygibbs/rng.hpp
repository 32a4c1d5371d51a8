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

#ifndef POLYGIBBS_RNG_HPP_
#define POLYGIBBS_RNG_HPP_

#include <array>
#include <cstdint>

namespace polygibbs {

// Philox4x32-10 counter-based block cipher (Salmon et al., SC'11).
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

PhiloxCounter philox4x32(PhiloxCounter counter, PhiloxKey key);

// Stream of uniforms keyed by (seed, site, sweep). The draw index is the
// last counter word and advances with every variate, so a given
// (seed, site, sweep, draw) always yields the same number regardless of
// the order in which sites are visited.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t site, std::uint64_t sweep,
            std::uint32_t first_draw = 0);

  // Uniform on the open interval (0, 1) with 53 random bits.
  double uniform();
  std::uint64_t next_u64();

  std::uint32_t draw_index() const { return draw_; }

 private:
  PhiloxKey key_;
  std::uint32_t site_;
  std::uint64_t sweep_;
  std::uint32_t draw_;
};

}  // namespace polygibbs

#endif  // POLYGIBBS_RNG_HPP_
