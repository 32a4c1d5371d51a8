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

#ifndef POLYGIBBS_LATTICE_HPP_
#define POLYGIBBS_LATTICE_HPP_

#include <cstddef>
#include <limits>
#include <map>
#include <vector>

#include <Eigen/Dense>

#include "polygibbs/potentials.hpp"

namespace polygibbs {

enum class Boundary { kTorus, kFree, kFixed };

const char* to_string(Boundary boundary);
Boundary parse_boundary(const std::string& name);

// Interaction partner of a site. Partners in the fixed boundary shell carry
// their frozen spin instead of a site index.
struct Neighbor {
  static constexpr std::size_t kShell = std::numeric_limits<std::size_t>::max();
  std::size_t site = kShell;
  std::size_t pair = 0;  // index into LatticeSpec::displacements
  double shell_value = 0.0;

  bool in_shell() const { return site == kShell; }
};

// Box of Z^d with row-major site indexing (last coordinate fastest).
// For site k, neighbor j-th has index k - displacements[j] (wrapped on the
// torus) and the pair contributes G_j(x_k - x_neighbor).
struct LatticeSpec {
  int dim = 1;
  std::vector<int> extents;
  Boundary boundary = Boundary::kFree;
  std::vector<Displacement> displacements;
  int r0 = 0;
  // Fixed boundary: spins on the shell of width r0, indexed over the padded
  // box with extents L_i + 2 r0 (interior entries unused).
  std::vector<double> shell;
  std::vector<std::vector<Neighbor>> neighbors;

  std::size_t site_count() const;
  std::vector<int> coords(std::size_t site) const;
  std::size_t site_of(const std::vector<int>& coords) const;
  std::vector<int> padded_extents() const;

  // Site reached from `site` by `offset`, wrapping on the torus; kShell
  // when the target leaves a free or fixed box.
  std::size_t translate(std::size_t site, const Displacement& offset) const;
};

// Throws ConfigError ("wrap violation") for a torus extent below 2 r0 + 1,
// or when a fixed shell has the wrong size.
LatticeSpec build_lattice(int dim, std::vector<int> extents, Boundary boundary,
                          std::vector<Displacement> displacements,
                          std::vector<double> shell = {});

// Fixed shell with every spin equal to `value`.
std::vector<double> constant_shell(int dim, const std::vector<int>& extents,
                                   int r0, double value);

// d(k, j) = alpha |k - j|_1.
struct Semimetric {
  double alpha = 0.0;
  double weight(const Displacement& j) const;
};

struct DobrushinReport {
  double epsilon = 0.0;
  std::map<Displacement, double> C;
  double gamma_d = 0.0;
  double threshold = std::numeric_limits<double>::infinity();
  double lambda = 0.0;
  bool unique = true;
  double tolerance = kDefaultRatioTolerance;
  double alpha = 0.0;
};

double gamma_d(const std::map<Displacement, double>& C, const Semimetric& metric);

// Sum_j b_j e^{d(j,0)} over the stored displacements.
double weighted_b_norm(const ModelSpec& model, const Semimetric& metric);

// Runs check_conditions and aggregates. Throws ConditionError when a
// condition fails.
DobrushinReport uniqueness_threshold(const ModelSpec& model,
                                     const Semimetric& metric,
                                     int refinement_rounds = 8);
DobrushinReport uniqueness_threshold(const ModelSpec& model,
                                     const ConditionReport& conditions,
                                     const Semimetric& metric);

// Exact covariance of a Gaussian model, the inverse of twice the quadratic
// form of the Hamiltonian, by dense Cholesky factorization. Throws
// ConfigError ("not Gaussian") for non-quadratic potentials.
Eigen::MatrixXd gaussian_covariance_oracle(const ModelSpec& model,
                                           const LatticeSpec& lattice);

}  // namespace polygibbs

#endif  // POLYGIBBS_LATTICE_HPP_
