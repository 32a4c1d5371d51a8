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

#ifndef POLYGIBBS_SAMPLER_HPP_
#define POLYGIBBS_SAMPLER_HPP_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "polygibbs/lattice.hpp"
#include "polygibbs/numerics.hpp"
#include "polygibbs/potentials.hpp"
#include "polygibbs/rng.hpp"

namespace polygibbs {

struct SpinField {
  std::vector<double> values;
};

struct ChainState {
  SpinField field;
  std::uint64_t sweep = 0;
  std::uint64_t seed = 0;
  std::uint64_t model_hash = 0;
};

enum class SweepOrder { kSequential, kCheckerboard };

const char* to_string(SweepOrder order);
SweepOrder parse_sweep_order(const std::string& name);

// Stable text form of a model and lattice; every number printed with 17
// significant digits.
std::string canonical_text(const ModelSpec& model, const LatticeSpec& lattice);
// FNV-1a 64 of arbitrary bytes.
std::uint64_t fnv1a64(std::string_view bytes);
std::uint64_t model_hash(const ModelSpec& model, const LatticeSpec& lattice);

// Named single-site function recorded for every site at every emitted sweep.
struct SiteObservable {
  std::string name;
  std::function<double(double)> phi;
};

SiteObservable coordinate_observable();

struct SampleRecord {
  std::uint64_t sweep = 0;
  std::vector<double> values;  // [observable][site]
};

struct RunOptions {
  std::uint64_t sweeps = 0;  // total sweep count to reach
  std::uint64_t burnin = 0;
  std::uint64_t thin = 1;
  SweepOrder order = SweepOrder::kSequential;
  std::vector<SiteObservable> observables = {coordinate_observable()};
  bool keep_records = true;
  std::function<void(const SampleRecord&)> on_record;
  // Called with the state after every sweep that is a multiple of
  // snapshot_every (0 disables).
  std::uint64_t snapshot_every = 0;
  std::function<void(const ChainState&)> on_snapshot;
};

struct ChainOutput {
  std::vector<SampleRecord> records;
  std::vector<std::string> diagnostics;
  std::uint64_t large_spin_events = 0;
};

struct SamplerOptions {
  double tail_tol = kDefaultTailTolerance;
  double cdf_tol = kDefaultCdfTolerance;
  unsigned threads = 1;
  double large_spin = 50.0;
};

// Exact single-site heat bath for the finite-volume Gibbs measure.
class HeatBathSampler {
 public:
  // Throws ConfigError when the lattice interaction table differs from the
  // model's, ConditionError when F is not uniformly convex.
  HeatBathSampler(ModelSpec model, LatticeSpec lattice,
                  SamplerOptions options = {});

  const ModelSpec& model() const { return model_; }
  const LatticeSpec& lattice() const { return lattice_; }
  double epsilon() const { return F_.epsilon; }
  std::uint64_t hash() const { return hash_; }

  ChainState initial_state(std::uint64_t seed, double value = 0.0) const;

  // Log-density of x_site given the other spins:
  // -F(x) - lambda * sum_j G_j(x - x_{site - j}).
  Density1D conditional_logdensity(const SpinField& field,
                                   std::size_t site) const;

  // Replaces field[site] by an exact conditional draw.
  void heatbath_update(ChainState& state, std::size_t site,
                       RngStream& rng) const;

  // Updates every site once with draws keyed by (seed, site, state.sweep),
  // then increments state.sweep.
  void sweep(ChainState& state, SweepOrder order) const;

  // Sites grouped by coordinate residues mod (r0 + 1). Throws ConfigError
  // ("invalid partition") if two sites of a class lie within r0.
  const std::vector<std::vector<std::size_t>>& checkerboard_classes() const;

  // Advances `state` to options.sweeps, emitting a record at every sweep s
  // with s > burnin and (s - burnin) % thin == 0. Throws ConfigError when
  // the state's model hash does not match.
  ChainOutput run_chain(ChainState& state, const RunOptions& options) const;

 private:
  void build_partition();

  ModelSpec model_;
  LatticeSpec lattice_;
  SamplerOptions options_;
  SelfPotential F_;
  Polynomial neg_F_;
  std::vector<Polynomial> pair_polys_;
  std::uint64_t hash_ = 0;
  std::vector<std::vector<std::size_t>> classes_;
  std::string partition_defect_;
};

// Snapshot: flat little-endian float64 array in site order plus a JSON
// sidecar with extents, sweep and seed.
void write_field_snapshot(const std::filesystem::path& dir,
                          const ChainState& state, const LatticeSpec& lattice);
SpinField read_field_snapshot(const std::filesystem::path& bin_path,
                              std::size_t sites);

void write_checkpoint(const std::filesystem::path& path, const ChainState& state);
// Throws DataError on a corrupt file.
ChainState read_checkpoint(const std::filesystem::path& path);

// Writes `bytes` to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

}  // namespace polygibbs

#endif  // POLYGIBBS_SAMPLER_HPP_
