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

#ifndef POLYGIBBS_ANALYSIS_HPP_
#define POLYGIBBS_ANALYSIS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "polygibbs/lattice.hpp"
#include "polygibbs/numerics.hpp"
#include "polygibbs/potentials.hpp"
#include "polygibbs/sampler.hpp"

namespace polygibbs {

// Smooth function of one real variable with its exact derivative.
struct TestFunction {
  std::string name;
  RealFunction value;
  RealFunction derivative;
};

TestFunction identity_function();
TestFunction tanh_function();
TestFunction one_plus_tanh_function();
TestFunction sine_perturbed_function();  // x + 0.3 sin x
TestFunction half_exponential_function();  // e^{x/2}
TestFunction constant_function(double c);
TestFunction polynomial_function(const Polynomial& p);
TestFunction scaled(const TestFunction& f, double c);

enum class ObservableKind { kCoordinate, kTanh, kPolynomial };

// Single-site observable f(x) = phi(x_{base_site}).
struct ObservableSpec {
  ObservableKind kind = ObservableKind::kTanh;
  Polynomial poly;  // kPolynomial only
  std::size_t base_site = 0;

  double phi(double u) const;
  double phi_prime(double u) const;
  std::string name() const;
  TestFunction function() const;

  // "x", "tanh", or "poly:c0,c1,..."
  static ObservableSpec parse(const std::string& text, std::size_t base_site = 0);
};

// sup_u |phi'(u)| / sqrt(F''(u)). Throws NumericError ("unbounded
// seminorm") when the sup diverges.
double delta_k(const TestFunction& phi, const SelfPotential& F);
// Zero for sites other than the observable's base site.
double delta_k(const ObservableSpec& obs, const SelfPotential& F, std::size_t site);

// sup_u |phi(u)|; throws NumericError for unbounded phi.
double sup_abs(const TestFunction& phi);

// Spin values of the emitted records, row-major [record][site].
struct SampleTable {
  std::vector<std::uint64_t> sweeps;
  std::size_t sites = 0;
  std::vector<double> x;

  std::size_t records() const { return sweeps.size(); }
  double at(std::size_t record, std::size_t site) const {
    return x[record * sites + site];
  }
};

// Takes the coordinate block (observable 0) of every record.
SampleTable table_from_records(const std::vector<SampleRecord>& records,
                               std::size_t sites);

inline constexpr std::size_t kDefaultBatches = 32;

struct MeanEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
};

// Batch-means estimate from contiguous blocks.
MeanEstimate batch_means(const std::vector<double>& series,
                         std::size_t batches = kDefaultBatches);

struct CovarianceSeries {
  std::vector<Displacement> displacements;
  std::vector<double> cov;
  std::vector<double> stderr_;
  std::size_t n_samples = 0;
  std::size_t batches = kDefaultBatches;
  std::string f_name;
  std::string g_name;
  bool translation_averaged = false;
};

// All displacements k in Z^dim with |k|_1 <= max_l1, in lexicographic order.
std::vector<Displacement> displacements_within(int dim, int max_l1);

// cov(f, tau_k g) for every k. On a torus the estimate is averaged over all
// base translates; otherwise f sits at its base site. Throws DataError
// ("insufficient samples") below 100 records.
CovarianceSeries estimate_covariances(const SampleTable& samples,
                                      const LatticeSpec& lattice,
                                      const ObservableSpec& f,
                                      const ObservableSpec& g,
                                      const std::vector<Displacement>& displacements,
                                      std::size_t batches = kDefaultBatches);

struct DecayFit {
  double rate = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<bool> included;
  std::size_t points = 0;
};

// Weighted least squares of log|cov(k)| against |k|_1 over displacements
// with |cov| > 3 stderr. Throws NumericError ("no signal") with fewer than
// three surviving points.
DecayFit fit_decay_rate(const CovarianceSeries& series);

struct BoundReport {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  double stat_error = 0.0;
  double numeric_tol = 0.0;
  bool pass = false;
  bool equality = false;
  std::string note;
};

// pass = lhs <= rhs + 3 stat_error + numeric_tol.
BoundReport make_bound(std::string name, double lhs, double rhs,
                       double stat_error, double numeric_tol,
                       std::string note = {});

// Weighted partial sum of |cov| against delta(f) delta(g) / (1 - lambda
// gamma_d). `dobrushin` must be computed with the same metric. Throws
// ConditionError ("outside uniqueness region") if lambda gamma_d >= 1.
BoundReport check_decay_bound(const CovarianceSeries& series,
                              const DobrushinReport& dobrushin,
                              const Semimetric& metric, double delta_f,
                              double delta_g);

// Site-maximal E x_k^2 against 1/eps, E exp(a x_k^2) against
// exp(a / (eps - 2a)), and the m_mu estimate max_k E rho^2(x_k, 0).
// Throws ConfigError ("a out of range") unless 0 <= a < eps / 2.
std::vector<BoundReport> check_moment_bounds(const SampleTable& samples,
                                             const SelfPotential& F, double a,
                                             std::size_t batches = kDefaultBatches);

struct BrascampLiebReport {
  BoundReport variance_vs_weighted;   // cov(phi, phi) <= E[phi'^2 / F'']
  BoundReport weighted_vs_poincare;   // E[phi'^2 / F''] <= E[phi'^2] / eps
  BoundReport weighted_vs_seminorm;   // E[phi'^2 / F''] <= delta(phi)^2
  bool seminorm_applicable = false;
  double quadrature_error = 0.0;
};

// All expectations under exp(-F) by quadrature.
BrascampLiebReport verify_brascamp_lieb_1d(const SelfPotential& F,
                                           const TestFunction& phi);

// Ent(phi^2) <= (2 / epsilon) E[phi'^2] under exp(-F).
BoundReport verify_lsi_1d(const SelfPotential& F, double epsilon,
                          const TestFunction& phi);

struct ContractionReport {
  BoundReport bound;
  double delta1_f = 0.0;
  double delta0_f = 0.0;
  double C01 = 0.0;
  double argsup_x1 = 0.0;
  double fd_max_deviation = 0.0;  // covariance identity vs central differences
};

// Two sites {0, 1}, free boundary, f = phi0(x_0) phi1(x_1), G the pair
// potential as a function of u = x_0 - x_1. The left side is
// sup_{x_1} |d/dx_1 mu_0(f)| / sqrt(F''(x_1)), the derivative taken through
// the covariance identity.
ContractionReport verify_contraction(const SelfPotential& F, const Polynomial& G,
                                     double lambda, double C01,
                                     const TestFunction& phi0,
                                     const TestFunction& phi1);

// mu_0(f)(x_1) and its x_1-derivative for the two-site system above.
struct ConditionalExpectation {
  double value = 0.0;
  double derivative = 0.0;
};
ConditionalExpectation two_site_conditional(const SelfPotential& F,
                                            const Polynomial& G, double lambda,
                                            const TestFunction& phi0,
                                            const TestFunction& phi1, double x1);

}  // namespace polygibbs

#endif  // POLYGIBBS_ANALYSIS_HPP_
