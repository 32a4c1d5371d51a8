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

#ifndef POLYGIBBS_POTENTIALS_HPP_
#define POLYGIBBS_POTENTIALS_HPP_

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "polygibbs/polynomial.hpp"

namespace polygibbs {

// Integer lattice vector.
struct Displacement {
  std::vector<int> components;

  int dim() const { return static_cast<int>(components.size()); }
  int l1() const;
  int linf() const;
  bool is_zero() const;
  Displacement operator-() const;

  // "1", "-1", "1,0", ...
  std::string to_string(char separator = ',') const;
  static Displacement parse(std::string_view text, char separator = ',');

  friend auto operator<=>(const Displacement&, const Displacement&) = default;
};

// Self-action F normalized so F(0) = 0, with its uniform convexity
// constant epsilon = inf F''. Construct through make_self_potential.
struct SelfPotential {
  Polynomial poly;
  Polynomial second;  // F''
  double epsilon = 0.0;

  double value(double x) const { return poly(x); }
  double curvature(double x) const { return second(x); }
};

struct PairPotential {
  Displacement displacement;
  Polynomial poly;  // polynomial in u = x_k - x_{k - displacement}
  double b = 0.0;   // Model 1 / Gaussian coupling coefficient, 0 for custom
};

struct ModelSpec {
  int dim = 1;
  Polynomial F;  // normalized, F(0) = 0
  std::map<Displacement, PairPotential> pairs;
  double lambda = 0.0;
  int r0 = 0;

  std::vector<Displacement> displacements() const;
};

inline constexpr double kDefaultRatioTolerance = 1e-6;

struct ConditionReport {
  double epsilon = 0.0;
  bool condA_ok = false;
  bool condB_ok = false;
  bool condC_ok = false;
  std::map<Displacement, double> C;
  double tolerance = kDefaultRatioTolerance;
  std::vector<std::string> notes;

  bool all_ok() const { return condA_ok && condB_ok && condC_ok; }
};

// Global infimum of F'' over the real line. Throws ConditionError
// ("not uniformly convex") if F'' is unbounded below or the infimum is <= 0.
double epsilon_of(const Polynomial& F);

// Subtracts F(0) and caches epsilon; throws like epsilon_of.
SelfPotential make_self_potential(const Polynomial& F);

// Builds a model from F and a table of pair potentials. Missing -j entries
// are filled with the reflected polynomial G_{-j}(u) = G_j(-u); existing
// ones must agree with it. Zero polynomials are dropped.
ModelSpec make_model(int dim, const Polynomial& F,
                     std::map<Displacement, Polynomial> pairs, double lambda);

// F = (1 + x^2)^(2n+1) - 1, G_j(u) = b_j u^(2n+2).
ModelSpec build_model1(int n, int dim, const std::map<Displacement, double>& b,
                       double lambda);

// F = epsilon x^2 / 2, G_j(u) = b_j u^2.
ModelSpec build_gaussian(double epsilon, int dim,
                         const std::map<Displacement, double>& b,
                         double lambda);

struct RatioSup {
  double value = 0.0;
  double tolerance = 0.0;
  double x = 0.0;
  double y = 0.0;
};

// sup over (x, y) of |G''(x - y)| / sqrt(F''(x) F''(y)). Throws
// ConditionError ("condition C violated") when the search diverges.
RatioSup interaction_ratio_sup(const SelfPotential& F, const Polynomial& G,
                               int refinement_rounds = 8);

// Condition B certificate for one pair potential; returns an empty string
// when it passes, otherwise the reason.
std::string pair_potential_defect(const PairPotential& pair, int r0);

ConditionReport check_conditions(const ModelSpec& model,
                                 int refinement_rounds = 8);

}  // namespace polygibbs

#endif  // POLYGIBBS_POTENTIALS_HPP_
