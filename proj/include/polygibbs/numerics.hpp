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

#ifndef POLYGIBBS_NUMERICS_HPP_
#define POLYGIBBS_NUMERICS_HPP_

#include <cstddef>
#include <functional>
#include <vector>

#include "polygibbs/polynomial.hpp"
#include "polygibbs/rng.hpp"

namespace polygibbs {

struct SelfPotential;

inline constexpr double kDefaultTailTolerance = 1e-12;
inline constexpr double kDefaultCdfTolerance = 1e-10;
inline constexpr std::size_t kDefaultNodeBudget = std::size_t{1} << 16;

struct TruncationBounds {
  double lo = 0.0;
  double hi = 0.0;
  // Certified tail mass outside [lo, hi] relative to a certified lower
  // bound on the mass inside.
  double tail_mass_bound = 0.0;
};

// Unnormalized log-concave density exp(log_density(x)) truncated to
// [lo, hi]. All densities in this library have polynomial log-density.
struct Density1D {
  Polynomial log_density;
  Polynomial log_slope;      // first derivative
  Polynomial log_curvature;  // second derivative
  double mode = 0.0;
  double log_peak = 0.0;  // log_density(mode)
  double lo = 0.0;
  double hi = 0.0;
  double tail_mass_bound = 0.0;

  // exp(log_density(x) - log_peak), at most 1.
  double scaled(double x) const;
};

// Maximizer of a strictly concave polynomial log-density, by bracketed
// Newton iteration on its derivative.
double find_mode(const Polynomial& log_density, double hint = 0.0);

// Bounds such that the mass outside [lo, hi] is below tol times the mass
// inside. Uses the Gaussian envelope exp(s u - convexity u^2 / 2) around
// the mode and, where tighter, the support line of the log-density.
// Throws NumericError ("envelope failure") if convexity <= 0.
TruncationBounds truncate(const Polynomial& log_density, double mode,
                          double convexity, double tol = kDefaultTailTolerance);

// find_mode + truncate. convexity must lower-bound -log_density''.
Density1D make_density(Polynomial log_density, double convexity,
                       double tol = kDefaultTailTolerance, double hint = 0.0);

// exp(-F) for a self potential, convexity epsilon.
Density1D density_of(const SelfPotential& F, double tol = kDefaultTailTolerance);

struct QuadratureOptions {
  double abs_tol = 1e-13;
  double rel_tol = 1e-12;
  std::size_t max_nodes = kDefaultNodeBudget;
  std::size_t initial_panels = 8;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t nodes_used = 0;
};

using RealFunction = std::function<double(double)>;

// Expectation of g under the normalized density, by composite 8-point
// Gauss-Legendre panels on [lo, hi]; the panel count doubles until two
// successive levels agree. Throws NumericError ("non-convergent").
QuadratureResult integrate(const Density1D& density, const RealFunction& g,
                           const QuadratureOptions& options = {});

// Expectations of several functions from one set of density evaluations.
std::vector<QuadratureResult> integrate_many(
    const Density1D& density, const std::vector<RealFunction>& functions,
    const QuadratureOptions& options = {});

// Plain integral of f over [a, b] (a > b gives the signed value).
QuadratureResult integrate_interval(const RealFunction& f, double a, double b,
                                    const QuadratureOptions& options = {});

// One draw by inversion of the cumulative distribution: panel masses from
// the same refinement as integrate, then a bracketed Newton solve inside
// the selected panel using the exact density. Consumes one uniform.
double sample_logconcave(const Density1D& density, RngStream& rng,
                         double cdf_tol = kDefaultCdfTolerance);

// Inverse of the normalized CDF at probability u in (0, 1); the sampler
// is sample_logconcave(d, rng) == quantile(d, rng.uniform()).
double quantile(const Density1D& density, double u,
                double cdf_tol = kDefaultCdfTolerance);

struct MaximizerOptions {
  int grid = 257;
  int rounds = 8;
  int shrink = 4;
  int local_half_width = 8;
};

struct Maximum2D {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
  double tolerance = 0.0;  // improvement achieved by the last round
  bool on_boundary = false;
};

// sup of f over the plane through (x, y) = (tan t, tan s), coarse grid
// followed by local refinement. Throws NumericError ("divergent sup") when
// the running maximum stays on the compactified boundary for two
// successive rounds while its improvements fail to contract.
Maximum2D maximize_ratio(const std::function<double(double, double)>& f,
                         const MaximizerOptions& options = {});

struct Maximum1D {
  double x = 0.0;
  double value = 0.0;
  double tolerance = 0.0;
  bool on_boundary = false;
};

// One-dimensional analogue of maximize_ratio on the real line.
Maximum1D maximize_1d(const RealFunction& f, const MaximizerOptions& options = {
                                                 4097, 8, 4, 8});

// rho(x, 0) = integral of sqrt(F'') from 0 to x.
double cumulative_rho(const SelfPotential& F, double x);

}  // namespace polygibbs

#endif  // POLYGIBBS_NUMERICS_HPP_
