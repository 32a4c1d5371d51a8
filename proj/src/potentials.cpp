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

#include "polygibbs/potentials.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>

#include "polygibbs/error.hpp"
#include "polygibbs/numerics.hpp"

namespace polygibbs {

int Displacement::l1() const {
  int s = 0;
  for (int c : components) s += std::abs(c);
  return s;
}

int Displacement::linf() const {
  int s = 0;
  for (int c : components) s = std::max(s, std::abs(c));
  return s;
}

bool Displacement::is_zero() const {
  return std::all_of(components.begin(), components.end(),
                     [](int c) { return c == 0; });
}

Displacement Displacement::operator-() const {
  Displacement out = *this;
  for (int& c : out.components) c = -c;
  return out;
}

std::string Displacement::to_string(char separator) const {
  std::string s;
  for (std::size_t i = 0; i < components.size(); ++i) {
    if (i > 0) s += separator;
    s += std::to_string(components[i]);
  }
  return s;
}

Displacement Displacement::parse(std::string_view text, char separator) {
  Displacement out;
  while (true) {
    const std::size_t cut = text.find(separator);
    std::string_view token = text.substr(0, cut);
    while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
    while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    int value = 0;
    const auto [ptr, ec] =
        std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
      throw ConfigError("bad displacement '" + std::string(text) + "'");
    }
    out.components.push_back(value);
    if (cut == std::string_view::npos) break;
    text.remove_prefix(cut + 1);
  }
  return out;
}

std::vector<Displacement> ModelSpec::displacements() const {
  std::vector<Displacement> out;
  out.reserve(pairs.size());
  for (const auto& [j, pair] : pairs) out.push_back(j);
  return out;
}

double epsilon_of(const Polynomial& F) {
  const Polynomial second = F.derivative().derivative();
  if (second.is_zero()) {
    throw ConditionError("not uniformly convex: F'' vanishes identically");
  }
  if (second.degree() % 2 != 0 || second.leading() <= 0.0) {
    throw ConditionError(
        "not uniformly convex: F'' has no positive even-degree leading term");
  }
  double inf = second(0.0);
  for (double x : second.derivative().real_roots()) {
    inf = std::min(inf, second(x));
  }
  if (!(inf > 0.0)) {
    throw ConditionError("not uniformly convex: inf F'' = " +
                         std::to_string(inf));
  }
  return inf;
}

SelfPotential make_self_potential(const Polynomial& F) {
  SelfPotential out;
  out.poly = F - Polynomial::constant(F(0.0));
  out.second = out.poly.derivative().derivative();
  out.epsilon = epsilon_of(out.poly);
  return out;
}

ModelSpec make_model(int dim, const Polynomial& F,
                     std::map<Displacement, Polynomial> pairs, double lambda) {
  if (dim < 1) throw ConfigError("dimension must be positive");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw ConfigError("lambda must be finite and >= 0");
  }
  ModelSpec model;
  model.dim = dim;
  model.F = F - Polynomial::constant(F(0.0));
  model.lambda = lambda;

  std::map<Displacement, Polynomial> full;
  for (auto& [j, g] : pairs) {
    if (j.dim() != dim) {
      throw ConfigError("displacement " + j.to_string() + " has wrong dimension");
    }
    if (j.is_zero()) throw ConfigError("pair potential at zero displacement");
    if (g.is_zero()) continue;
    const Polynomial mirror = g.reflected();
    const auto other = pairs.find(-j);
    if (other != pairs.end() && !other->second.is_zero()) {
      const auto a = other->second.coefficients();
      const auto b = mirror.coefficients();
      bool same = a.size() == b.size();
      for (std::size_t i = 0; same && i < a.size(); ++i) {
        same = std::abs(a[i] - b[i]) <= 1e-12 * std::max(1.0, std::abs(b[i]));
      }
      if (!same) {
        throw ConfigError("pair potentials at " + j.to_string() + " and " +
                          (-j).to_string() + " are not mirror images");
      }
    }
    full[j] = g;
    full.try_emplace(-j, mirror);
  }
  for (auto& [j, g] : full) {
    model.pairs[j] = PairPotential{j, g, 0.0};
    model.r0 = std::max(model.r0, j.linf());
  }
  return model;
}

namespace {

std::map<Displacement, Polynomial> scaled_monomials(
    const std::map<Displacement, double>& b, int power) {
  std::map<Displacement, Polynomial> out;
  for (const auto& [j, bj] : b) {
    if (!(bj >= 0.0) || !std::isfinite(bj)) {
      throw ConditionError("condition B violated: b_" + j.to_string() +
                           " must be finite and >= 0");
    }
    const auto mirror = b.find(-j);
    if (mirror != b.end() && mirror->second != bj) {
      throw ConfigError("coefficients b are not symmetric under j -> -j at " +
                        j.to_string());
    }
    if (bj > 0.0) out[j] = Polynomial::monomial(bj, power);
  }
  return out;
}

void record_b(ModelSpec& model, const std::map<Displacement, double>& b) {
  for (auto& [j, pair] : model.pairs) {
    const auto it = b.find(j);
    pair.b = it != b.end() ? it->second : b.at(-j);
  }
}

}  // namespace

ModelSpec build_model1(int n, int dim, const std::map<Displacement, double>& b,
                       double lambda) {
  if (n < 0) throw ConfigError("Model 1 requires n >= 0");
  const Polynomial base({1.0, 0.0, 1.0});
  ModelSpec model = make_model(dim, pow(base, 2 * n + 1),
                               scaled_monomials(b, 2 * n + 2), lambda);
  record_b(model, b);
  return model;
}

ModelSpec build_gaussian(double epsilon, int dim,
                         const std::map<Displacement, double>& b,
                         double lambda) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ConfigError("Gaussian model requires epsilon > 0");
  }
  ModelSpec model = make_model(dim, Polynomial::monomial(0.5 * epsilon, 2),
                               scaled_monomials(b, 2), lambda);
  record_b(model, b);
  return model;
}

RatioSup interaction_ratio_sup(const SelfPotential& F, const Polynomial& G,
                               int refinement_rounds) {
  const Polynomial g2 = G.derivative().derivative();
  if (g2.is_zero()) return {};
  auto ratio = [&](double x, double y) {
    return std::abs(g2(x - y)) /
           (std::sqrt(F.curvature(x)) * std::sqrt(F.curvature(y)));
  };
  MaximizerOptions options;
  options.rounds = refinement_rounds;
  try {
    const Maximum2D m = maximize_ratio(ratio, options);
    return {m.value, m.tolerance, m.x, m.y};
  } catch (const NumericError& e) {
    throw ConditionError(std::string("condition C violated: ") + e.what());
  }
}

std::string pair_potential_defect(const PairPotential& pair, int r0) {
  const Displacement& j = pair.displacement;
  const Polynomial& g = pair.poly;
  if (j.is_zero()) return "zero displacement";
  if (j.linf() > r0) return "displacement outside range r0";
  if (std::abs(g(0.0)) > 1e-12) return "G(0) != 0";
  const Polynomial g2 = g.derivative().derivative();
  if (g2.is_zero()) return {};
  if (g2.degree() % 2 != 0 || g2.leading() <= 0.0) {
    return "G'' has no positive even-degree leading term";
  }
  double scale = 0.0;
  for (double c : g2.coefficients()) scale = std::max(scale, std::abs(c));
  for (int i = 0; i <= 4000; ++i) {
    const double u = -20.0 + 0.01 * i;
    if (g2(u) < -1e-12 * scale) return "G'' < 0 at u = " + std::to_string(u);
  }
  return {};
}

ConditionReport check_conditions(const ModelSpec& model, int refinement_rounds) {
  ConditionReport report;
  report.notes.push_back(
      "condition A growth bound |F(x)| <= c exp(a|x|): automatic for "
      "polynomials, recorded only");

  std::optional<SelfPotential> F;
  try {
    F = make_self_potential(model.F);
    report.epsilon = F->epsilon;
    report.condA_ok = true;
  } catch (const ConditionError& e) {
    report.notes.push_back(std::string("condition A: ") + e.what());
  }

  report.condB_ok = model.lambda >= 0.0;
  for (const auto& [j, pair] : model.pairs) {
    const std::string defect = pair_potential_defect(pair, model.r0);
    if (!defect.empty()) {
      report.condB_ok = false;
      report.notes.push_back("condition B at " + j.to_string() + ": " + defect);
    }
  }

  if (!report.condA_ok || !report.condB_ok) {
    report.notes.push_back("condition C not evaluated");
    return report;
  }
  report.condC_ok = true;
  for (const auto& [j, pair] : model.pairs) {
    try {
      const RatioSup sup = interaction_ratio_sup(*F, pair.poly, refinement_rounds);
      report.C[j] = sup.value;
      if (sup.tolerance > report.tolerance) {
        report.notes.push_back("C_" + j.to_string() + " refinement gain " +
                               std::to_string(sup.tolerance) +
                               " exceeds the tolerance");
      }
    } catch (const ConditionError& e) {
      report.condC_ok = false;
      report.C[j] = std::numeric_limits<double>::infinity();
      report.notes.push_back("C_" + j.to_string() + ": " + e.what());
    }
  }
  return report;
}

}  // namespace polygibbs
