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

#include "polygibbs/sampler.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "polygibbs/error.hpp"

namespace polygibbs {

const char* to_string(SweepOrder order) {
  return order == SweepOrder::kCheckerboard ? "checkerboard" : "sequential";
}

SweepOrder parse_sweep_order(const std::string& name) {
  if (name == "sequential") return SweepOrder::kSequential;
  if (name == "checkerboard") return SweepOrder::kCheckerboard;
  throw ConfigError("unknown sweep order '" + name + "'");
}

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string poly_text(const Polynomial& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.coefficients().size(); ++i) {
    if (i) s += ',';
    s += fmt17(p.coefficients()[i]);
  }
  return s + "]";
}

}  // namespace

std::string canonical_text(const ModelSpec& model, const LatticeSpec& lattice) {
  std::ostringstream out;
  out << "model dim=" << model.dim << " lambda=" << fmt17(model.lambda)
      << " F=" << poly_text(model.F);
  for (const auto& [j, pair] : model.pairs) {
    out << " G[" << j.to_string() << "]=" << poly_text(pair.poly);
  }
  out << " lattice dim=" << lattice.dim << " L=";
  for (int L : lattice.extents) out << L << ',';
  out << " bc=" << to_string(lattice.boundary);
  if (lattice.boundary == Boundary::kFixed) {
    std::uint64_t h = fnv1a64(std::string_view(
        reinterpret_cast<const char*>(lattice.shell.data()),
        lattice.shell.size() * sizeof(double)));
    out << " shell=" << h;
  }
  return out.str();
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t model_hash(const ModelSpec& model, const LatticeSpec& lattice) {
  return fnv1a64(canonical_text(model, lattice));
}

SiteObservable coordinate_observable() {
  return {"x", [](double x) { return x; }};
}

HeatBathSampler::HeatBathSampler(ModelSpec model, LatticeSpec lattice,
                                 SamplerOptions options)
    : model_(std::move(model)),
      lattice_(std::move(lattice)),
      options_(options),
      F_(make_self_potential(model_.F)) {
  if (lattice_.displacements != model_.displacements()) {
    throw ConfigError("lattice interaction table does not match the model");
  }
  if (lattice_.dim != model_.dim) throw ConfigError("lattice/model dimension mismatch");
  neg_F_ = F_.poly * -1.0;
  for (const Displacement& j : lattice_.displacements) {
    pair_polys_.push_back(model_.pairs.at(j).poly);
  }
  hash_ = model_hash(model_, lattice_);
  if (options_.threads == 0) options_.threads = 1;
  build_partition();
}

void HeatBathSampler::build_partition() {
  const int period = lattice_.r0 + 1;
  int colors = 1;
  for (int i = 0; i < lattice_.dim; ++i) colors *= period;
  classes_.assign(static_cast<std::size_t>(colors), {});
  auto color_of = [&](std::size_t site) {
    const std::vector<int> c = lattice_.coords(site);
    int color = 0;
    for (int i = lattice_.dim - 1; i >= 0; --i) {
      color = color * period + c[static_cast<std::size_t>(i)] % period;
    }
    return static_cast<std::size_t>(color);
  };
  const std::size_t n = lattice_.site_count();
  std::vector<std::size_t> color(n);
  for (std::size_t k = 0; k < n; ++k) {
    color[k] = color_of(k);
    classes_[color[k]].push_back(k);
  }
  // Every offset with |o|_inf <= r0 must change the class.
  const int r0 = lattice_.r0;
  std::vector<int> offset(static_cast<std::size_t>(lattice_.dim), -r0);
  const std::size_t total = static_cast<std::size_t>(
      std::pow(2 * r0 + 1, lattice_.dim));
  for (std::size_t o = 0; o < total && r0 > 0; ++o) {
    std::size_t rest = o;
    for (int i = 0; i < lattice_.dim; ++i) {
      offset[static_cast<std::size_t>(i)] =
          static_cast<int>(rest % static_cast<std::size_t>(2 * r0 + 1)) - r0;
      rest /= static_cast<std::size_t>(2 * r0 + 1);
    }
    const Displacement d{offset};
    if (d.is_zero()) continue;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t other = lattice_.translate(k, d);
      if (other != Neighbor::kShell && color[other] == color[k]) {
        partition_defect_ = "invalid partition: sites " + std::to_string(k) +
                            " and " + std::to_string(other) +
                            " share a class within distance r0";
        return;
      }
    }
  }
}

const std::vector<std::vector<std::size_t>>&
HeatBathSampler::checkerboard_classes() const {
  if (!partition_defect_.empty()) throw ConfigError(partition_defect_);
  return classes_;
}

ChainState HeatBathSampler::initial_state(std::uint64_t seed, double value) const {
  ChainState s;
  s.field.values.assign(lattice_.site_count(), value);
  s.seed = seed;
  s.model_hash = hash_;
  return s;
}

Density1D HeatBathSampler::conditional_logdensity(const SpinField& field,
                                                  std::size_t site) const {
  Polynomial ld = neg_F_;
  if (model_.lambda != 0.0) {
    for (const Neighbor& nb : lattice_.neighbors[site]) {
      const double y = nb.in_shell() ? nb.shell_value : field.values[nb.site];
      ld.add_scaled_shifted(pair_polys_[nb.pair], y, -model_.lambda);
    }
  }
  return make_density(std::move(ld), F_.epsilon, options_.tail_tol,
                      field.values[site]);
}

void HeatBathSampler::heatbath_update(ChainState& state, std::size_t site,
                                      RngStream& rng) const {
  const Density1D d = conditional_logdensity(state.field, site);
  state.field.values[site] = sample_logconcave(d, rng, options_.cdf_tol);
}

void HeatBathSampler::sweep(ChainState& state, SweepOrder order) const {
  const std::size_t n = lattice_.site_count();
  if (state.field.values.size() != n) throw ConfigError("field size mismatch");
  if (order == SweepOrder::kSequential) {
    for (std::size_t k = 0; k < n; ++k) {
      RngStream rng(state.seed, k, state.sweep);
      heatbath_update(state, k, rng);
    }
    ++state.sweep;
    return;
  }
  for (const std::vector<std::size_t>& cls : checkerboard_classes()) {
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(options_.threads, cls.size() / 64 + 1));
    auto run_range = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        RngStream rng(state.seed, cls[i], state.sweep);
        heatbath_update(state, cls[i], rng);
      }
    };
    if (workers <= 1) {
      run_range(0, cls.size());
      continue;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    const std::size_t chunk = (cls.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(cls.size(), begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          run_range(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }
  ++state.sweep;
}

ChainOutput HeatBathSampler::run_chain(ChainState& state,
                                       const RunOptions& options) const {
  if (state.model_hash != hash_) {
    throw ConfigError("checkpoint model hash does not match the configuration");
  }
  if (options.thin == 0) throw ConfigError("thin must be >= 1");
  if (options.order == SweepOrder::kCheckerboard) checkerboard_classes();
  ChainOutput out;
  const std::size_t n = lattice_.site_count();
  while (state.sweep < options.sweeps) {
    sweep(state, options.order);
    for (std::size_t k = 0; k < n; ++k) {
      const double x = state.field.values[k];
      if (!std::isfinite(x)) {
        throw NumericError("spin at site " + std::to_string(k) + " is not finite");
      }
      if (std::abs(x) > options_.large_spin) {
        ++out.large_spin_events;
        if (out.diagnostics.size() < 16) {
          out.diagnostics.push_back("|x| > " + fmt17(options_.large_spin) +
                                    " at site " + std::to_string(k) +
                                    ", sweep " + std::to_string(state.sweep));
        }
      }
    }
    const std::uint64_t s = state.sweep;
    if (s > options.burnin && (s - options.burnin) % options.thin == 0) {
      SampleRecord rec;
      rec.sweep = s;
      rec.values.reserve(options.observables.size() * n);
      for (const SiteObservable& obs : options.observables) {
        for (double x : state.field.values) rec.values.push_back(obs.phi(x));
      }
      if (options.on_record) options.on_record(rec);
      if (options.keep_records) out.records.push_back(std::move(rec));
    }
    if (options.snapshot_every > 0 && s % options.snapshot_every == 0 &&
        options.on_snapshot) {
      options.on_snapshot(state);
    }
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

namespace {

constexpr char kCheckpointMagic[8] = {'P', 'G', 'C', 'H', 'K', '0', '0', '1'};

template <class T>
void put(std::string& buf, const T& v) {
  buf.append(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T take(const std::string& buf, std::size_t& pos) {
  if (pos + sizeof(T) > buf.size()) throw DataError("checkpoint truncated");
  T v;
  std::memcpy(&v, buf.data() + pos, sizeof v);
  pos += sizeof v;
  return v;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void write_field_snapshot(const std::filesystem::path& dir,
                          const ChainState& state, const LatticeSpec& lattice) {
  const std::string stem = "field_" + std::to_string(state.sweep);
  const auto& v = state.field.values;
  write_file_atomic(dir / (stem + ".bin"),
                    std::string_view(reinterpret_cast<const char*>(v.data()),
                                     v.size() * sizeof(double)));
  nlohmann::json side = {{"extents", lattice.extents},
                         {"sweep", state.sweep},
                         {"seed", state.seed},
                         {"sites", v.size()},
                         {"dtype", "float64"}};
  write_file_atomic(dir / (stem + ".json"), side.dump(2) + "\n");
}

SpinField read_field_snapshot(const std::filesystem::path& bin_path,
                              std::size_t sites) {
  const std::string buf = slurp(bin_path);
  if (buf.size() != sites * sizeof(double)) throw DataError("snapshot size mismatch");
  SpinField f;
  f.values.resize(sites);
  std::memcpy(f.values.data(), buf.data(), buf.size());
  return f;
}

void write_checkpoint(const std::filesystem::path& path, const ChainState& state) {
  std::string buf(kCheckpointMagic, sizeof kCheckpointMagic);
  put(buf, state.model_hash);
  put(buf, state.seed);
  put(buf, state.sweep);
  put(buf, static_cast<std::uint64_t>(state.field.values.size()));
  for (double x : state.field.values) put(buf, x);
  put(buf, fnv1a64(buf));
  write_file_atomic(path, buf);
}

ChainState read_checkpoint(const std::filesystem::path& path) {
  const std::string buf = slurp(path);
  if (buf.size() < sizeof kCheckpointMagic + 5 * sizeof(std::uint64_t) ||
      std::memcmp(buf.data(), kCheckpointMagic, sizeof kCheckpointMagic) != 0) {
    throw DataError("not a checkpoint file: " + path.string());
  }
  std::size_t pos = sizeof kCheckpointMagic;
  ChainState s;
  s.model_hash = take<std::uint64_t>(buf, pos);
  s.seed = take<std::uint64_t>(buf, pos);
  s.sweep = take<std::uint64_t>(buf, pos);
  const auto n = take<std::uint64_t>(buf, pos);
  if (buf.size() != pos + (n + 1) * sizeof(double)) throw DataError("checkpoint size mismatch");
  s.field.values.resize(n);
  for (auto& x : s.field.values) {
    x = take<double>(buf, pos);
    if (!std::isfinite(x)) throw DataError("checkpoint holds a non-finite spin");
  }
  const auto digest = take<std::uint64_t>(buf, pos);
  if (digest != fnv1a64(std::string_view(buf.data(), pos - sizeof digest))) {
    throw DataError("checkpoint digest mismatch");
  }
  return s;
}

}  // namespace polygibbs
