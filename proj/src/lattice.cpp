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
#include <string>

#include "polygibbs/error.hpp"

namespace polygibbs {

const char* to_string(Boundary boundary) {
  switch (boundary) {
    case Boundary::kTorus: return "torus";
    case Boundary::kFree: return "free";
    case Boundary::kFixed: return "fixed";
  }
  return "free";
}

Boundary parse_boundary(const std::string& name) {
  if (name == "torus") return Boundary::kTorus;
  if (name == "free") return Boundary::kFree;
  if (name == "fixed") return Boundary::kFixed;
  throw ConfigError("unknown boundary condition '" + name + "'");
}

std::size_t LatticeSpec::site_count() const {
  std::size_t n = 1;
  for (int L : extents) n *= static_cast<std::size_t>(L);
  return n;
}

std::vector<int> LatticeSpec::coords(std::size_t site) const {
  std::vector<int> c(static_cast<std::size_t>(dim));
  for (int i = dim - 1; i >= 0; --i) {
    const auto L = static_cast<std::size_t>(extents[static_cast<std::size_t>(i)]);
    c[static_cast<std::size_t>(i)] = static_cast<int>(site % L);
    site /= L;
  }
  return c;
}

std::size_t LatticeSpec::site_of(const std::vector<int>& c) const {
  std::size_t site = 0;
  for (int i = 0; i < dim; ++i) {
    site = site * static_cast<std::size_t>(extents[static_cast<std::size_t>(i)]) +
           static_cast<std::size_t>(c[static_cast<std::size_t>(i)]);
  }
  return site;
}

std::vector<int> LatticeSpec::padded_extents() const {
  std::vector<int> out = extents;
  for (int& L : out) L += 2 * r0;
  return out;
}

std::size_t LatticeSpec::translate(std::size_t site,
                                   const Displacement& offset) const {
  std::vector<int> c = coords(site);
  for (int i = 0; i < dim; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const int L = extents[ui];
    int v = c[ui] + offset.components[ui];
    if (boundary == Boundary::kTorus) {
      v = ((v % L) + L) % L;
    } else if (v < 0 || v >= L) {
      return Neighbor::kShell;
    }
    c[ui] = v;
  }
  return site_of(c);
}

std::vector<double> constant_shell(int dim, const std::vector<int>& extents,
                                   int r0, double value) {
  std::size_t n = 1;
  for (int i = 0; i < dim; ++i) {
    n *= static_cast<std::size_t>(extents[static_cast<std::size_t>(i)] + 2 * r0);
  }
  return std::vector<double>(n, value);
}

LatticeSpec build_lattice(int dim, std::vector<int> extents, Boundary boundary,
                          std::vector<Displacement> displacements,
                          std::vector<double> shell) {
  if (dim < 1) throw ConfigError("lattice dimension must be positive");
  if (static_cast<int>(extents.size()) != dim) {
    throw ConfigError("lattice needs one extent per dimension");
  }
  LatticeSpec lat;
  lat.dim = dim;
  lat.extents = std::move(extents);
  lat.boundary = boundary;
  lat.displacements = std::move(displacements);
  for (const Displacement& j : lat.displacements) {
    if (j.dim() != dim) throw ConfigError("displacement dimension mismatch");
    lat.r0 = std::max(lat.r0, j.linf());
  }
  for (int L : lat.extents) {
    if (L < 1) throw ConfigError("lattice extents must be positive");
    if (boundary == Boundary::kTorus && L < 2 * lat.r0 + 1) {
      throw ConfigError("wrap violation: torus extent " + std::to_string(L) +
                        " < 2 r0 + 1 = " + std::to_string(2 * lat.r0 + 1));
    }
  }
  if (boundary == Boundary::kFixed) {
    const std::vector<int> padded = lat.padded_extents();
    std::size_t n = 1;
    for (int L : padded) n *= static_cast<std::size_t>(L);
    if (shell.size() != n) {
      throw ConfigError("fixed boundary shell must hold " + std::to_string(n) +
                        " values");
    }
    for (double v : shell) {
      if (!std::isfinite(v)) throw ConfigError("fixed boundary spins must be finite");
    }
    lat.shell = std::move(shell);
  }

  const std::size_t n = lat.site_count();
  lat.neighbors.resize(n);
  const std::vector<int> padded = lat.padded_extents();
  for (std::size_t k = 0; k < n; ++k) {
    const std::vector<int> c = lat.coords(k);
    for (std::size_t p = 0; p < lat.displacements.size(); ++p) {
      const Displacement back = -lat.displacements[p];
      const std::size_t other = lat.translate(k, back);
      if (other != Neighbor::kShell) {
        lat.neighbors[k].push_back({other, p, 0.0});
      } else if (boundary == Boundary::kFixed) {
        std::size_t idx = 0;
        for (int i = 0; i < dim; ++i) {
          const auto ui = static_cast<std::size_t>(i);
          idx = idx * static_cast<std::size_t>(padded[ui]) +
                static_cast<std::size_t>(c[ui] + back.components[ui] + lat.r0);
        }
        lat.neighbors[k].push_back({Neighbor::kShell, p, lat.shell[idx]});
      }
    }
  }
  return lat;
}

double Semimetric::weight(const Displacement& j) const {
  return std::exp(alpha * static_cast<double>(j.l1()));
}

double gamma_d(const std::map<Displacement, double>& C, const Semimetric& metric) {
  double sum = 0.0;
  for (const auto& [j, c] : C) sum += metric.weight(j) * c;
  return sum;
}

double weighted_b_norm(const ModelSpec& model, const Semimetric& metric) {
  double sum = 0.0;
  for (const auto& [j, pair] : model.pairs) sum += pair.b * metric.weight(j);
  return sum;
}

DobrushinReport uniqueness_threshold(const ModelSpec& model,
                                     const ConditionReport& conditions,
                                     const Semimetric& metric) {
  if (!conditions.all_ok()) {
    std::string why = "conditions A-C not satisfied";
    for (const std::string& note : conditions.notes) why += "; " + note;
    throw ConditionError(why);
  }
  DobrushinReport r;
  r.epsilon = conditions.epsilon;
  r.C = conditions.C;
  r.gamma_d = gamma_d(r.C, metric);
  r.threshold = r.gamma_d > 0.0 ? 1.0 / r.gamma_d
                                : std::numeric_limits<double>::infinity();
  r.lambda = model.lambda;
  r.tolerance = conditions.tolerance;
  r.alpha = metric.alpha;
  // The threshold inherits the optimizer tolerance through gamma_d.
  double weight_sum = 0.0;
  for (const auto& [j, c] : r.C) weight_sum += metric.weight(j);
  const double threshold_tol =
      r.gamma_d > 0.0 ? r.tolerance * weight_sum / (r.gamma_d * r.gamma_d) : 0.0;
  r.unique = model.lambda == 0.0 || model.lambda < r.threshold - threshold_tol;
  return r;
}

DobrushinReport uniqueness_threshold(const ModelSpec& model,
                                     const Semimetric& metric,
                                     int refinement_rounds) {
  return uniqueness_threshold(model, check_conditions(model, refinement_rounds),
                              metric);
}

namespace {

// Coefficient a with G(u) = a u^2 exactly, or NaN.
double quadratic_coefficient(const Polynomial& p) {
  if (p.degree() > 2) return std::nan("");
  if (p.coefficient(0) != 0.0 || p.coefficient(1) != 0.0) return std::nan("");
  return p.coefficient(2);
}

}  // namespace

Eigen::MatrixXd gaussian_covariance_oracle(const ModelSpec& model,
                                           const LatticeSpec& lattice) {
  const double half_eps = quadratic_coefficient(model.F);
  if (!(half_eps > 0.0)) throw ConfigError("not Gaussian: F must be eps x^2 / 2");
  std::vector<double> b;
  for (const Displacement& j : lattice.displacements) {
    const auto it = model.pairs.find(j);
    if (it == model.pairs.end()) throw ConfigError("lattice/model displacement mismatch");
    const double a = quadratic_coefficient(it->second.poly);
    if (std::isnan(a)) throw ConfigError("not Gaussian: G_" + j.to_string() + " is not b u^2");
    b.push_back(a);
  }
  const std::size_t n = lattice.site_count();
  if (n > 4096) throw ConfigError("Gaussian oracle limited to 4096 sites");

  // Exponent x^T Q x; each unordered pair is seen once from each endpoint,
  // so each visit contributes half of its weight.
  Eigen::MatrixXd Q = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                            static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const auto ik = static_cast<Eigen::Index>(k);
    Q(ik, ik) += half_eps;
    for (const Neighbor& nb : lattice.neighbors[k]) {
      const double w = model.lambda * b[nb.pair];
      if (nb.in_shell()) {
        Q(ik, ik) += w;
        continue;
      }
      const auto ij = static_cast<Eigen::Index>(nb.site);
      Q(ik, ik) += 0.5 * w;
      Q(ij, ij) += 0.5 * w;
      Q(ik, ij) -= 0.5 * w;
      Q(ij, ik) -= 0.5 * w;
    }
  }
  const Eigen::MatrixXd precision = 2.0 * Q;
  Eigen::LLT<Eigen::MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) {
    throw NumericError("Gaussian precision matrix is not positive definite");
  }
  return llt.solve(Eigen::MatrixXd::Identity(precision.rows(), precision.cols()));
}

}  // namespace polygibbs
