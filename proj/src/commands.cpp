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

#include "polygibbs/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "polygibbs/config.hpp"
#include "polygibbs/error.hpp"
#include "polygibbs/lattice.hpp"
#include "polygibbs/sampler.hpp"

namespace polygibbs {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kStatSigmas = 3.0;
constexpr double kOracleRateTolerance = 0.1;

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json tolerances(const RunConfig& config) {
  const QuadratureOptions q;
  return {{"ratio_tolerance", kDefaultRatioTolerance},
          {"tail_tolerance", kDefaultTailTolerance},
          {"cdf_tolerance", kDefaultCdfTolerance},
          {"quadrature_abs_tol", q.abs_tol},
          {"quadrature_rel_tol", q.rel_tol},
          {"quadrature_node_budget", q.max_nodes},
          {"stat_sigmas", kStatSigmas},
          {"batches", config.analysis.batches},
          {"oracle_rate_rel_tolerance", kOracleRateTolerance}};
}

json report_header(const RunConfig& config, const std::string& command) {
  return {{"tool_version", kToolVersion},
          {"command", command},
          {"config_digest", config_digest(config.source)},
          {"tolerances", tolerances(config)}};
}

json c_table(const std::map<Displacement, double>& C) {
  json t = json::object();
  for (const auto& [j, c] : C) t[j.to_string()] = finite_or_null(c);
  return t;
}

RunConfig load_with_overrides(const fs::path& path, const CommandOptions& o) {
  if (path.empty()) throw ConfigError("--config is required");
  RunConfig c = load_config(path);
  if (o.alpha) {
    if (!(*o.alpha >= 0.0) || !std::isfinite(*o.alpha)) {
      throw ConfigError("--alpha must be finite and >= 0");
    }
    c.metric.alpha = *o.alpha;
  }
  if (o.max_displacement) {
    if (*o.max_displacement < 0) throw ConfigError("--max-displacement must be >= 0");
    c.analysis.max_displacement = *o.max_displacement;
  }
  return c;
}

// Report to <dir>/<name>, or to the console when dir is empty.
void emit_json(const CommandOptions& o, const fs::path& dir, const std::string& name,
               const json& doc) {
  if (dir.empty()) {
    *o.console << doc.dump(2) << "\n";
    return;
  }
  fs::create_directories(dir);
  write_file_atomic(dir / name, doc.dump(2) + "\n");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

template <typename Body>
int guarded(const CommandOptions& o, const char* name, Body&& body) {
  std::ostream& err = *o.errors;
  try {
    return body();
  } catch (const ConfigError& e) {
    err << name << ": config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DataError& e) {
    err << name << ": data error: " << e.what() << "\n";
    return kExitData;
  } catch (const ConditionError& e) {
    err << name << ": " << e.what() << "\n";
    return kExitFailure;
  } catch (const NumericError& e) {
    err << name << ": numerical failure: " << e.what() << "\n";
    return kExitFailure;
  } catch (const fs::filesystem_error& e) {
    err << name << ": data error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << name << ": " << e.what() << "\n";
    return kExitFailure;
  }
}

// Parses one CSV number; false on garbage.
bool parse_double(std::string_view text, double& out) {
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    const std::size_t cut = line.find(sep);
    out.push_back(line.substr(0, cut));
    if (cut == std::string_view::npos) break;
    line.remove_prefix(cut + 1);
  }
  return out;
}

std::uint64_t leading_sweep(std::string_view line) {
  std::uint64_t s = 0;
  const std::string_view head = line.substr(0, line.find(','));
  const auto [ptr, ec] = std::from_chars(head.data(), head.data() + head.size(), s);
  if (ec != std::errc() || ptr != head.data() + head.size()) {
    throw DataError("malformed samples.csv row");
  }
  return s;
}

constexpr const char* kRunArtifacts[] = {"config.json", "meta.json", "samples.csv",
                                         "checkpoint.bin", "report.json", "cov.csv",
                                         "verify.json"};

bool is_run_artifact(const fs::path& p) {
  const std::string name = p.filename().string();
  for (const char* a : kRunArtifacts) {
    if (name == a) return true;
  }
  return name.rfind("field_", 0) == 0 &&
         (p.extension() == ".bin" || p.extension() == ".json");
}

}  // namespace

json to_json(const BoundReport& r) {
  return {{"name", r.name},
          {"lhs", finite_or_null(r.lhs)},
          {"rhs", finite_or_null(r.rhs)},
          {"slack", finite_or_null(r.slack)},
          {"stat_error", finite_or_null(r.stat_error)},
          {"numeric_tol", finite_or_null(r.numeric_tol)},
          {"pass", r.pass},
          {"equality", r.equality},
          {"note", r.note}};
}

json to_json(const ConditionReport& r) {
  return {{"epsilon", finite_or_null(r.epsilon)},
          {"condA_ok", r.condA_ok},
          {"condB_ok", r.condB_ok},
          {"condC_ok", r.condC_ok},
          {"C", c_table(r.C)},
          {"tolerance", r.tolerance},
          {"notes", r.notes}};
}

json to_json(const DobrushinReport& r) {
  return {{"epsilon", r.epsilon},
          {"C", c_table(r.C)},
          {"gamma_d", r.gamma_d},
          {"threshold", finite_or_null(r.threshold)},
          {"lambda", r.lambda},
          {"lambda_gamma_d", r.lambda * r.gamma_d},
          {"unique", r.unique},
          {"tolerance", r.tolerance},
          {"alpha", r.alpha}};
}

SampleTable read_samples_csv(const fs::path& path, std::size_t sites) {
  const std::string text = read_text(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw DataError("empty samples.csv");
  const auto header = split(line, ',');
  if (header.empty() || header[0] != "sweep") throw DataError("samples.csv lacks a sweep column");
  std::vector<std::size_t> cols(sites, 0);
  std::size_t found = 0;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const std::string_view h = header[c];
    if (h.size() < 4 || h.substr(0, 2) != "x[" || h.back() != ']') continue;
    std::size_t k = 0;
    const std::string_view idx = h.substr(2, h.size() - 3);
    const auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), k);
    if (ec != std::errc() || ptr != idx.data() + idx.size() || k >= sites) {
      throw DataError("samples.csv has unexpected column '" + std::string(h) + "'");
    }
    cols[k] = c;
    ++found;
  }
  if (found != sites) {
    throw DataError("samples.csv has " + std::to_string(found) + " coordinate columns, "
                    "expected " + std::to_string(sites));
  }
  SampleTable t;
  t.sites = sites;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != header.size()) {
      throw DataError("samples.csv row " + std::to_string(row) + " has the wrong width");
    }
    t.sweeps.push_back(leading_sweep(line));
    for (std::size_t k = 0; k < sites; ++k) {
      double v = 0.0;
      if (!parse_double(fields[cols[k]], v) || !std::isfinite(v)) {
        throw DataError("samples.csv row " + std::to_string(row) + " has a bad value");
      }
      t.x.push_back(v);
    }
  }
  return t;
}

std::map<Displacement, double> read_oracle_csv(const fs::path& path) {
  const std::string text = read_text(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("displacement,cov", 0) != 0) {
    throw DataError("oracle CSV must start with 'displacement,cov'");
  }
  std::map<Displacement, double> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    double v = 0.0;
    if (f.size() < 2 || !parse_double(f[1], v)) throw DataError("bad oracle row '" + line + "'");
    try {
      out[Displacement::parse(f[0], ';')] = v;
    } catch (const ConfigError& e) {
      throw DataError(e.what());
    }
  }
  return out;
}

int cmd_check(const CommandOptions& o) {
  return guarded(o, "check", [&] {
    const RunConfig cfg = load_with_overrides(o.config, o);
    const ConditionReport cond = check_conditions(cfg.model);
    json rep = report_header(cfg, "check");
    rep["conditions"] = to_json(cond);
    int code = kExitPass;
    if (!cond.all_ok()) {
      code = kExitFailure;
      *o.console << "conditions: A=" << cond.condA_ok << " B=" << cond.condB_ok
                 << " C=" << cond.condC_ok << "\n";
    } else {
      const DobrushinReport d = uniqueness_threshold(cfg.model, cond, cfg.metric);
      rep["dobrushin"] = to_json(d);
      code = d.unique ? kExitPass : kExitOutsideUniqueness;
      *o.console << "gamma_d=" << fmt17(d.gamma_d) << " threshold=" << fmt17(d.threshold)
                 << " lambda=" << fmt17(d.lambda)
                 << (d.unique ? " (unique)" : " (outside uniqueness region)") << "\n";
    }
    rep["exit_code"] = code;
    if (!o.out.empty()) emit_json(o, o.out, "report.json", rep);
    return code;
  });
}

int cmd_sample(const CommandOptions& o) {
  return guarded(o, "sample", [&] {
    if (o.out.empty()) throw ConfigError("--out is required");
    const fs::path dir = o.out;
    const fs::path ckpt = dir / "checkpoint.bin";

    RunConfig cfg;
    if (o.resume) {
      if (!fs::exists(ckpt)) throw DataError("no checkpoint in " + dir.string());
      cfg = load_with_overrides(o.config.empty() ? dir / "config.json" : o.config, o);
    } else {
      cfg = load_with_overrides(o.config, o);
      if (fs::exists(dir) && !fs::is_directory(dir)) {
        throw ConfigError(dir.string() + " is not a directory");
      }
      if (fs::exists(dir) && !fs::is_empty(dir)) {
        if (!o.force) {
          throw ConfigError("refusing to overwrite non-empty " + dir.string() +
                            " (use --force)");
        }
        for (const auto& entry : fs::directory_iterator(dir)) {
          if (is_run_artifact(entry.path())) fs::remove(entry.path());
        }
      }
    }
    if (!cfg.has_sampler) throw ConfigError("config has no sampler section");
    SamplerConfig sc = cfg.sampler;
    if (o.sweeps) sc.sweeps = *o.sweeps;

    const ConditionReport cond = check_conditions(cfg.model);
    if (!cond.all_ok()) {
      throw ConditionError("model fails the growth/convexity conditions; see check");
    }
    const DobrushinReport dob = uniqueness_threshold(cfg.model, cond, cfg.metric);

    const LatticeSpec lattice = make_lattice(cfg);
    const HeatBathSampler sampler(cfg.model, lattice);
    const std::size_t sites = lattice.site_count();

    std::vector<SiteObservable> observables = {coordinate_observable()};
    for (const std::string& name : sc.observables) {
      if (name == "x") continue;
      const ObservableSpec spec = ObservableSpec::parse(name);
      observables.push_back({spec.name(), [spec](double u) { return spec.phi(u); }});
    }

    ChainState state;
    std::string csv;
    if (o.resume) {
      state = read_checkpoint(ckpt);
      if (state.model_hash != sampler.hash()) {
        throw ConfigError("checkpoint model hash does not match the configuration");
      }
      if (state.seed != sc.seed) throw ConfigError("checkpoint seed does not match the configuration");
      const std::string old = read_text(dir / "samples.csv");
      std::istringstream in(old);
      std::string line;
      std::getline(in, line);
      csv = line + "\n";
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (leading_sweep(line) > state.sweep) break;
        csv += line + "\n";
      }
    } else {
      fs::create_directories(dir);
      state = sampler.initial_state(sc.seed, sc.initial_value);
      csv = "sweep";
      for (const SiteObservable& obs : observables) {
        for (std::size_t k = 0; k < sites; ++k) {
          csv += "," + obs.name + "[" + std::to_string(k) + "]";
        }
      }
      csv += "\n";
    }
    if (sc.sweeps < state.sweep) {
      throw ConfigError("requested sweeps " + std::to_string(sc.sweeps) +
                        " precede the checkpoint at " + std::to_string(state.sweep));
    }

    RunOptions ro;
    ro.sweeps = sc.sweeps;
    ro.burnin = sc.burnin;
    ro.thin = sc.thin;
    ro.order = sc.order;
    ro.observables = observables;
    ro.keep_records = false;
    std::uint64_t emitted = 0;
    ro.on_record = [&](const SampleRecord& r) {
      csv += std::to_string(r.sweep);
      for (double v : r.values) {
        csv += ',';
        csv += fmt17(v);
      }
      csv += '\n';
      ++emitted;
    };
    ro.snapshot_every = sc.snapshot_every;
    ro.on_snapshot = [&](const ChainState& s) { write_field_snapshot(dir, s, lattice); };

    const ChainOutput result = sampler.run_chain(state, ro);

    write_file_atomic(dir / "samples.csv", csv);
    write_field_snapshot(dir, state, lattice);
    write_checkpoint(ckpt, state);
    if (!o.resume) write_file_atomic(dir / "config.json", cfg.source.dump(2) + "\n");

    std::vector<std::string> names;
    for (const SiteObservable& obs : observables) names.push_back(obs.name);
    json meta = {{"tool_version", kToolVersion},
                 {"config_digest", config_digest(cfg.source)},
                 {"seed", state.seed},
                 {"sweeps", state.sweep},
                 {"burnin", sc.burnin},
                 {"thin", sc.thin},
                 {"order", to_string(sc.order)},
                 {"model_hash", hex64(sampler.hash())},
                 {"sites", sites},
                 {"extents", lattice.extents},
                 {"boundary", to_string(lattice.boundary)},
                 {"observables", names},
                 {"lambda", cfg.model.lambda},
                 {"gamma_d", dob.gamma_d},
                 {"threshold", finite_or_null(dob.threshold)},
                 {"outside_uniqueness_region", !dob.unique},
                 {"tail_tolerance", kDefaultTailTolerance},
                 {"cdf_tolerance", kDefaultCdfTolerance},
                 {"large_spin_events", result.large_spin_events},
                 {"diagnostics", result.diagnostics}};
    write_file_atomic(dir / "meta.json", meta.dump(2) + "\n");
    *o.console << "sampled to sweep " << state.sweep << ", " << emitted
               << " new records" << (dob.unique ? "" : " (outside uniqueness region)")
               << "\n";
    return kExitPass;
  });
}

int cmd_analyze(const CommandOptions& o) {
  return guarded(o, "analyze", [&] {
    const fs::path dir = o.run_dir.empty() ? o.out : o.run_dir;
    if (dir.empty()) throw ConfigError("a run directory is required");
    if (!fs::exists(dir / "config.json")) {
      throw DataError("run directory " + dir.string() + " has no config.json");
    }
    const RunConfig cfg = load_with_overrides(dir / "config.json", o);
    const LatticeSpec lattice = make_lattice(cfg);
    const SampleTable table = read_samples_csv(dir / "samples.csv", lattice.site_count());
    const SelfPotential F = make_self_potential(cfg.model.F);
    const ObservableSpec obs = ObservableSpec::parse(cfg.analysis.observable, 0);

    std::vector<Displacement> disps;
    for (const Displacement& k :
         displacements_within(lattice.dim, cfg.analysis.max_displacement)) {
      if (lattice.translate(0, k) != Neighbor::kShell) disps.push_back(k);
    }
    const CovarianceSeries series =
        estimate_covariances(table, lattice, obs, obs, disps, cfg.analysis.batches);

    json analysis = {{"observable", obs.name()},
                     {"n_samples", series.n_samples},
                     {"batches", series.batches},
                     {"translation_averaged", series.translation_averaged},
                     {"max_displacement", cfg.analysis.max_displacement}};
    std::vector<BoundReport> bounds;
    bool outside = false;

    std::vector<bool> included(series.cov.size(), false);
    std::optional<DecayFit> fit;
    try {
      fit = fit_decay_rate(series);
      included = fit->included;
      analysis["fit"] = {{"rate", fit->rate},
                         {"intercept", fit->intercept},
                         {"r_squared", fit->r_squared},
                         {"points", fit->points}};
    } catch (const NumericError& e) {
      analysis["fit"] = {{"status", "no signal"}, {"detail", e.what()}};
    }

    const ConditionReport cond = check_conditions(cfg.model);
    analysis["conditions"] = to_json(cond);
    if (!cond.all_ok()) throw ConditionError("model fails the growth/convexity conditions");
    const DobrushinReport dob = uniqueness_threshold(cfg.model, cond, cfg.metric);
    analysis["dobrushin"] = to_json(dob);

    const double delta_f = delta_k(obs.function(), F);
    analysis["delta_f"] = delta_f;
    bool bounded = true;
    try {
      sup_abs(obs.function());
    } catch (const NumericError&) {
      bounded = false;
    }
    try {
      BoundReport r = check_decay_bound(series, dob, cfg.metric, delta_f, delta_f);
      if (bounded) {
        bounds.push_back(std::move(r));
      } else {
        // The decay bound is stated for bounded observables only.
        analysis["decay_bound_informational"] = to_json(r);
      }
    } catch (const ConditionError& e) {
      outside = true;
      analysis["decay_bound_skipped"] = e.what();
    }
    const double a = cfg.analysis.a < 0.0 ? F.epsilon / 4.0 : cfg.analysis.a;
    for (BoundReport& r : check_moment_bounds(table, F, a, cfg.analysis.batches)) {
      bounds.push_back(std::move(r));
    }

    if (!o.against_oracle.empty()) {
      const auto oracle = read_oracle_csv(o.against_oracle);
      CovarianceSeries reference = series;
      for (std::size_t i = 0; i < series.cov.size(); ++i) {
        const auto it = oracle.find(series.displacements[i]);
        if (it == oracle.end()) {
          throw DataError("oracle has no row for " + series.displacements[i].to_string());
        }
        reference.cov[i] = it->second;
        bounds.push_back(make_bound("oracle agreement [" +
                                        series.displacements[i].to_string(';') + "]",
                                    std::abs(series.cov[i] - it->second), 0.0,
                                    series.stderr_[i], 0.0,
                                    "|cov - oracle| within 3 stderr"));
      }
      if (fit) {
        // Oracle values on the same displacements with the same weights.
        CovarianceSeries ref_fit;
        for (std::size_t i = 0; i < series.cov.size(); ++i) {
          if (!fit->included[i]) continue;
          ref_fit.displacements.push_back(series.displacements[i]);
          ref_fit.cov.push_back(reference.cov[i]);
          ref_fit.stderr_.push_back(series.stderr_[i] *
                                    std::abs(reference.cov[i] / series.cov[i]));
        }
        const DecayFit oracle_fit = fit_decay_rate(ref_fit);
        analysis["oracle_fit_rate"] = oracle_fit.rate;
        BoundReport r = make_bound("decay rate vs oracle",
                                   std::abs(fit->rate - oracle_fit.rate),
                                   kOracleRateTolerance * std::abs(oracle_fit.rate), 0.0,
                                   0.0, "fitted rate within 10% of the oracle fit");
        bounds.push_back(r);
      }
    }

    std::string csv = "displacement,cov,stderr,weight,included_in_fit\n";
    for (std::size_t i = 0; i < series.cov.size(); ++i) {
      csv += series.displacements[i].to_string(';') + "," + fmt17(series.cov[i]) + "," +
             fmt17(series.stderr_[i]) + "," +
             fmt17(cfg.metric.weight(series.displacements[i])) + "," +
             (included[i] ? "1" : "0") + "\n";
    }
    write_file_atomic(dir / "cov.csv", csv);

    json list = json::array();
    bool all_pass = true;
    for (const BoundReport& r : bounds) {
      list.push_back(to_json(r));
      all_pass = all_pass && r.pass;
      if (!r.pass) *o.errors << "analyze: FAIL " << r.name << "\n";
    }
    analysis["bounds"] = list;

    json rep = json::object();
    if (fs::exists(dir / "report.json")) {
      try {
        rep = json::parse(read_text(dir / "report.json"));
      } catch (const json::exception&) {
        rep = json::object();
      }
    }
    const json header = report_header(cfg, "analyze");
    for (const auto& item : header.items()) rep[item.key()] = item.value();
    rep["analysis"] = analysis;
    const int code = outside ? kExitOutsideUniqueness : (all_pass ? kExitPass : kExitFailure);
    rep["exit_code"] = code;
    write_file_atomic(dir / "report.json", rep.dump(2) + "\n");
    *o.console << "analyzed " << series.n_samples << " records: "
               << (outside ? "outside uniqueness region"
                           : (all_pass ? "all bounds pass" : "bound failure"))
               << "\n";
    return code;
  });
}

int cmd_verify(const CommandOptions& o) {
  return guarded(o, "verify", [&] {
    const RunConfig cfg = load_with_overrides(o.config, o);
    const SelfPotential F = make_self_potential(cfg.model.F);
    std::vector<BoundReport> reports;

    const std::vector<TestFunction> battery = {identity_function(), tanh_function(),
                                               sine_perturbed_function(),
                                               one_plus_tanh_function()};
    for (const TestFunction& phi : battery) {
      const BrascampLiebReport bl = verify_brascamp_lieb_1d(F, phi);
      reports.push_back(bl.variance_vs_weighted);
      reports.push_back(bl.weighted_vs_poincare);
      if (bl.seminorm_applicable) reports.push_back(bl.weighted_vs_seminorm);
      reports.push_back(verify_lsi_1d(F, F.epsilon, phi));
    }

    // Two sites {0, 1} along the first axis: G as a function of x_0 - x_1.
    std::vector<int> e1(static_cast<std::size_t>(cfg.model.dim), 0);
    e1[0] = -1;
    Polynomial G;
    if (const auto it = cfg.model.pairs.find(Displacement{e1}); it != cfg.model.pairs.end()) {
      G = it->second.poly;
    }
    const double C01 = G.is_zero() ? 0.0 : interaction_ratio_sup(F, G).value;
    const TestFunction t = tanh_function();
    for (const TestFunction& phi0 : {tanh_function(), one_plus_tanh_function()}) {
      reports.push_back(verify_contraction(F, G, cfg.model.lambda, C01, phi0, t).bound);
    }

    json list = json::array();
    bool all_pass = true;
    for (const BoundReport& r : reports) {
      list.push_back(to_json(r));
      if (!r.pass) {
        all_pass = false;
        *o.errors << "verify: FAIL " << r.name << " lhs=" << fmt17(r.lhs)
                  << " rhs=" << fmt17(r.rhs) << "\n";
      }
    }
    const int code = all_pass ? kExitPass : kExitFailure;
    if (!o.out.empty()) {
      emit_json(o, o.out, "verify.json", list);
      json rep = report_header(cfg, "verify");
      rep["reports"] = reports.size();
      rep["all_pass"] = all_pass;
      rep["exit_code"] = code;
      emit_json(o, o.out, "report.json", rep);
    } else {
      *o.console << list.dump(2) << "\n";
    }
    return code;
  });
}

int cmd_oracle(const CommandOptions& o) {
  return guarded(o, "oracle", [&] {
    const RunConfig cfg = load_with_overrides(o.config, o);
    const LatticeSpec lattice = make_lattice(cfg);
    const Eigen::MatrixXd cov = gaussian_covariance_oracle(cfg.model, lattice);
    std::string csv = "displacement,cov\n";
    for (const Displacement& k :
         displacements_within(lattice.dim, cfg.analysis.max_displacement)) {
      const std::size_t s = lattice.translate(0, k);
      if (s == Neighbor::kShell) continue;
      csv += k.to_string(';') + "," + fmt17(cov(0, static_cast<Eigen::Index>(s))) + "\n";
    }
    if (o.out.empty()) {
      *o.console << csv;
    } else {
      if (o.out.has_parent_path()) fs::create_directories(o.out.parent_path());
      write_file_atomic(o.out, csv);
    }
    return kExitPass;
  });
}

}  // namespace polygibbs
