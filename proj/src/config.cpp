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

#include "polygibbs/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "polygibbs/analysis.hpp"
#include "polygibbs/error.hpp"

namespace polygibbs {

namespace {

using nlohmann::json;

void check_keys(const json& section, const std::string& where,
                const std::set<std::string>& allowed) {
  if (!section.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& item : section.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

double number(const json& section, const std::string& key, const std::string& where) {
  if (!section.contains(key)) throw ConfigError("missing '" + key + "' in " + where);
  const json& v = section.at(key);
  if (!v.is_number()) throw ConfigError("'" + key + "' in " + where + " must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("'" + key + "' in " + where + " is not finite");
  return x;
}

double number_or(const json& section, const std::string& key,
                 const std::string& where, double fallback) {
  return section.contains(key) ? number(section, key, where) : fallback;
}

std::uint64_t count(const json& section, const std::string& key,
                    const std::string& where) {
  const json& v = section.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw ConfigError("'" + key + "' in " + where + " must be a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

std::uint64_t count_or(const json& section, const std::string& key,
                       const std::string& where, std::uint64_t fallback) {
  return section.contains(key) ? count(section, key, where) : fallback;
}

std::vector<double> coefficients(const json& v, const std::string& where) {
  if (!v.is_array()) throw ConfigError(where + " must be an array of coefficients");
  std::vector<double> c;
  for (const json& e : v) {
    if (!e.is_number() || !std::isfinite(e.get<double>())) {
      throw ConfigError(where + " has a non-finite coefficient");
    }
    c.push_back(e.get<double>());
  }
  return c;
}

Displacement displacement_key(const std::string& key, int dim) {
  Displacement j = Displacement::parse(key);
  if (j.dim() != dim) {
    throw ConfigError("displacement '" + key + "' does not have dimension " +
                      std::to_string(dim));
  }
  return j;
}

std::map<Displacement, double> b_table(const json& model, int dim) {
  std::map<Displacement, double> b;
  if (!model.contains("b")) return b;
  const json& t = model.at("b");
  if (!t.is_object()) throw ConfigError("model.b must be an object");
  for (const auto& item : t.items()) {
    if (!item.value().is_number() || !std::isfinite(item.value().get<double>())) {
      throw ConfigError("model.b[" + item.key() + "] must be a finite number");
    }
    b[displacement_key(item.key(), dim)] = item.value().get<double>();
  }
  return b;
}

ModelSpec parse_model(const json& m, int dim) {
  if (!m.is_object() || !m.contains("type") || !m.at("type").is_string()) {
    throw ConfigError("model.type is required");
  }
  const std::string type = m.at("type").get<std::string>();
  const double lambda = number_or(m, "lambda", "model", 0.0);
  if (lambda < 0.0) throw ConfigError("model.lambda must be >= 0");
  if (type == "model1") {
    check_keys(m, "model", {"type", "n", "b", "lambda"});
    const json& n = m.contains("n") ? m.at("n") : json(1);
    if (!n.is_number_integer() || n.get<int>() < 0) {
      throw ConfigError("model.n must be a non-negative integer");
    }
    return build_model1(n.get<int>(), dim, b_table(m, dim), lambda);
  }
  if (type == "gaussian") {
    check_keys(m, "model", {"type", "epsilon", "b", "lambda"});
    const double eps = number(m, "epsilon", "model");
    return build_gaussian(eps, dim, b_table(m, dim), lambda);
  }
  if (type == "custom") {
    check_keys(m, "model", {"type", "F", "pairs", "lambda"});
    if (!m.contains("F")) throw ConfigError("missing 'F' in model");
    const Polynomial F(coefficients(m.at("F"), "model.F"));
    std::map<Displacement, Polynomial> pairs;
    if (m.contains("pairs")) {
      if (!m.at("pairs").is_object()) throw ConfigError("model.pairs must be an object");
      for (const auto& item : m.at("pairs").items()) {
        pairs[displacement_key(item.key(), dim)] =
            Polynomial(coefficients(item.value(), "model.pairs[" + item.key() + "]"));
      }
    }
    return make_model(dim, F, std::move(pairs), lambda);
  }
  throw ConfigError("unknown model type '" + type + "'");
}

LatticeConfig parse_lattice(const json& l) {
  check_keys(l, "lattice", {"dim", "L", "bc", "boundary_value"});
  LatticeConfig out;
  if (l.contains("dim")) {
    const json& d = l.at("dim");
    if (!d.is_number_integer() || d.get<int>() < 1 || d.get<int>() > 8) {
      throw ConfigError("lattice.dim must be an integer in [1, 8]");
    }
    out.dim = d.get<int>();
  }
  if (!l.contains("L")) throw ConfigError("missing 'L' in lattice");
  const json& L = l.at("L");
  auto extent = [](const json& v) {
    if (!v.is_number_integer() || v.get<int>() < 1) {
      throw ConfigError("lattice extents must be positive integers");
    }
    return v.get<int>();
  };
  if (L.is_array()) {
    for (const json& e : L) out.extents.push_back(extent(e));
    if (!l.contains("dim")) out.dim = static_cast<int>(out.extents.size());
    if (static_cast<int>(out.extents.size()) != out.dim) {
      throw ConfigError("lattice.L has the wrong number of extents");
    }
  } else {
    out.extents.assign(static_cast<std::size_t>(out.dim), extent(L));
  }
  if (l.contains("bc")) {
    if (!l.at("bc").is_string()) throw ConfigError("lattice.bc must be a string");
    out.boundary = parse_boundary(l.at("bc").get<std::string>());
  }
  out.boundary_value = number_or(l, "boundary_value", "lattice", 0.0);
  return out;
}

SamplerConfig parse_sampler(const json& s) {
  check_keys(s, "sampler", {"sweeps", "burnin", "thin", "seed", "order",
                            "observables", "snapshot_every", "initial_value"});
  SamplerConfig out;
  if (!s.contains("seed")) throw ConfigError("sampler.seed is required");
  if (!s.contains("sweeps")) throw ConfigError("missing 'sweeps' in sampler");
  out.seed = count(s, "seed", "sampler");
  out.sweeps = count(s, "sweeps", "sampler");
  out.burnin = count_or(s, "burnin", "sampler", out.sweeps / 10);
  out.thin = count_or(s, "thin", "sampler", 1);
  if (out.thin < 1) throw ConfigError("sampler.thin must be >= 1");
  if (out.sweeps <= out.burnin) throw ConfigError("sampler.sweeps must exceed burnin");
  if (s.contains("order")) {
    if (!s.at("order").is_string()) throw ConfigError("sampler.order must be a string");
    out.order = parse_sweep_order(s.at("order").get<std::string>());
  }
  if (s.contains("observables")) {
    if (!s.at("observables").is_array()) {
      throw ConfigError("sampler.observables must be an array of strings");
    }
    for (const json& o : s.at("observables")) {
      if (!o.is_string()) throw ConfigError("sampler.observables must be strings");
      out.observables.push_back(o.get<std::string>());
    }
  }
  out.snapshot_every = count_or(s, "snapshot_every", "sampler", 0);
  out.initial_value = number_or(s, "initial_value", "sampler", 0.0);
  return out;
}

AnalysisConfig parse_analysis(const json& a) {
  check_keys(a, "analysis", {"observable", "max_displacement", "a", "batches"});
  AnalysisConfig out;
  if (a.contains("observable")) {
    if (!a.at("observable").is_string()) throw ConfigError("analysis.observable must be a string");
    out.observable = a.at("observable").get<std::string>();
  }
  out.max_displacement = static_cast<int>(
      count_or(a, "max_displacement", "analysis", static_cast<std::uint64_t>(out.max_displacement)));
  out.a = number_or(a, "a", "analysis", out.a);
  out.batches = count_or(a, "batches", "analysis", out.batches);
  if (out.batches < 2) throw ConfigError("analysis.batches must be >= 2");
  return out;
}

}  // namespace

RunConfig parse_config(const json& document) {
  check_keys(document, "config", {"model", "lattice", "metric", "sampler", "analysis"});
  RunConfig c;
  c.source = document;
  if (!document.contains("lattice")) throw ConfigError("missing 'lattice' section");
  c.lattice = parse_lattice(document.at("lattice"));
  if (!document.contains("model")) throw ConfigError("missing 'model' section");
  c.model = parse_model(document.at("model"), c.lattice.dim);
  if (document.contains("metric")) {
    check_keys(document.at("metric"), "metric", {"alpha"});
    c.metric.alpha = number_or(document.at("metric"), "alpha", "metric", 0.0);
    if (c.metric.alpha < 0.0) throw ConfigError("metric.alpha must be >= 0");
  }
  if (document.contains("sampler")) {
    c.has_sampler = true;
    c.sampler = parse_sampler(document.at("sampler"));
  }
  if (document.contains("analysis")) c.analysis = parse_analysis(document.at("analysis"));
  ObservableSpec::parse(c.analysis.observable);
  for (const std::string& o : c.sampler.observables) ObservableSpec::parse(o);
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  json document;
  try {
    document = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_config(document);
}

LatticeSpec make_lattice(const RunConfig& config) {
  const LatticeConfig& l = config.lattice;
  std::vector<double> shell;
  if (l.boundary == Boundary::kFixed) {
    shell = constant_shell(l.dim, l.extents, config.model.r0, l.boundary_value);
  }
  return build_lattice(l.dim, l.extents, l.boundary, config.model.displacements(),
                       std::move(shell));
}

std::string config_digest(const json& document) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(document.dump())));
  return buf;
}

}  // namespace polygibbs
