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

#include "polygibbs/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>

#include "polygibbs/error.hpp"

namespace polygibbs {

TestFunction identity_function() {
  return {"x", [](double x) { return x; }, [](double) { return 1.0; }};
}

TestFunction tanh_function() {
  return {"tanh x", [](double x) { return std::tanh(x); },
          [](double x) {
            const double c = std::cosh(x);
            return 1.0 / (c * c);
          }};
}

TestFunction one_plus_tanh_function() {
  TestFunction t = tanh_function();
  return {"1 + tanh x", [](double x) { return 1.0 + std::tanh(x); },
          t.derivative};
}

TestFunction sine_perturbed_function() {
  return {"x + 0.3 sin x", [](double x) { return x + 0.3 * std::sin(x); },
          [](double x) { return 1.0 + 0.3 * std::cos(x); }};
}

TestFunction half_exponential_function() {
  return {"exp(x/2)", [](double x) { return std::exp(0.5 * x); },
          [](double x) { return 0.5 * std::exp(0.5 * x); }};
}

TestFunction constant_function(double c) {
  return {"constant", [c](double) { return c; }, [](double) { return 0.0; }};
}

TestFunction polynomial_function(const Polynomial& p) {
  const Polynomial d = p.derivative();
  return {"polynomial", [p](double x) { return p(x); },
          [d](double x) { return d(x); }};
}

TestFunction scaled(const TestFunction& f, double c) {
  return {f.name, [v = f.value, c](double x) { return c * v(x); },
          [d = f.derivative, c](double x) { return c * d(x); }};
}

double ObservableSpec::phi(double u) const {
  switch (kind) {
    case ObservableKind::kCoordinate: return u;
    case ObservableKind::kTanh: return std::tanh(u);
    case ObservableKind::kPolynomial: return poly(u);
  }
  return 0.0;
}

double ObservableSpec::phi_prime(double u) const {
  switch (kind) {
    case ObservableKind::kCoordinate: return 1.0;
    case ObservableKind::kTanh: {
      const double c = std::cosh(u);
      return 1.0 / (c * c);
    }
    case ObservableKind::kPolynomial: return poly.eval(u, 1);
  }
  return 0.0;
}

std::string ObservableSpec::name() const {
  switch (kind) {
    case ObservableKind::kCoordinate: return "x";
    case ObservableKind::kTanh: return "tanh";
    case ObservableKind::kPolynomial: {
      std::string s = "poly:";
      for (std::size_t i = 0; i < poly.coefficients().size(); ++i) {
        if (i) s += ',';
        s += std::to_string(poly.coefficients()[i]);
      }
      return s;
    }
  }
  return "?";
}

TestFunction ObservableSpec::function() const {
  const ObservableSpec self = *this;
  return {name(), [self](double u) { return self.phi(u); },
          [self](double u) { return self.phi_prime(u); }};
}

ObservableSpec ObservableSpec::parse(const std::string& text,
                                     std::size_t base_site) {
  ObservableSpec o;
  o.base_site = base_site;
  if (text == "x" || text == "coordinate") {
    o.kind = ObservableKind::kCoordinate;
  } else if (text == "tanh") {
    o.kind = ObservableKind::kTanh;
  } else if (text.rfind("poly:", 0) == 0) {
    o.kind = ObservableKind::kPolynomial;
    std::vector<double> c;
    std::string rest = text.substr(5);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const std::size_t cut = std::min(rest.find(',', pos), rest.size());
      try {
        c.push_back(std::stod(rest.substr(pos, cut - pos)));
      } catch (const std::exception&) {
        throw ConfigError("bad polynomial observable '" + text + "'");
      }
      pos = cut + 1;
    }
    o.poly = Polynomial(std::move(c));
  } else {
    throw ConfigError("unknown observable '" + text + "'");
  }
  return o;
}

double delta_k(const TestFunction& phi, const SelfPotential& F) {
  try {
    return maximize_1d([&](double u) {
             return std::abs(phi.derivative(u)) / std::sqrt(F.curvature(u));
           }).value;
  } catch (const NumericError& e) {
    throw NumericError(std::string("unbounded seminorm: ") + e.what());
  }
}

double delta_k(const ObservableSpec& obs, const SelfPotential& F,
               std::size_t site) {
  if (site != obs.base_site) return 0.0;
  return delta_k(obs.function(), F);
}

double sup_abs(const TestFunction& phi) {
  return maximize_1d([&](double u) { return std::abs(phi.value(u)); }).value;
}

SampleTable table_from_records(const std::vector<SampleRecord>& records,
                               std::size_t sites) {
  SampleTable t;
  t.sites = sites;
  t.sweeps.reserve(records.size());
  t.x.reserve(records.size() * sites);
  for (const SampleRecord& r : records) {
    if (r.values.size() < sites) throw DataError("record shorter than the lattice");
    t.sweeps.push_back(r.sweep);
    t.x.insert(t.x.end(), r.values.begin(),
               r.values.begin() + static_cast<std::ptrdiff_t>(sites));
  }
  return t;
}

namespace {

// Contiguous batch boundaries [begin_b, begin_{b+1}).
std::vector<std::size_t> batch_edges(std::size_t n, std::size_t batches) {
  batches = std::max<std::size_t>(1, std::min(batches, n));
  std::vector<std::size_t> edges(batches + 1);
  for (std::size_t b = 0; b <= batches; ++b) edges[b] = b * n / batches;
  return edges;
}

double spread_error(const std::vector<double>& estimates) {
  const std::size_t B = estimates.size();
  if (B < 2) return std::numeric_limits<double>::infinity();
  const double mean =
      std::accumulate(estimates.begin(), estimates.end(), 0.0) / static_cast<double>(B);
  double ss = 0.0;
  for (double e : estimates) ss += (e - mean) * (e - mean);
  const double se = std::sqrt(ss / static_cast<double>(B - 1) / static_cast<double>(B));
  return std::max(se, std::numeric_limits<double>::min());
}

}  // namespace

MeanEstimate batch_means(const std::vector<double>& series, std::size_t batches) {
  if (series.empty()) throw DataError("insufficient samples: empty series");
  const std::vector<std::size_t> edges = batch_edges(series.size(), batches);
  std::vector<double> means;
  for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
    double s = 0.0;
    for (std::size_t i = edges[b]; i < edges[b + 1]; ++i) s += series[i];
    means.push_back(s / static_cast<double>(edges[b + 1] - edges[b]));
  }
  MeanEstimate m;
  m.mean = std::accumulate(series.begin(), series.end(), 0.0) /
           static_cast<double>(series.size());
  m.stderr_ = spread_error(means);
  return m;
}

std::vector<Displacement> displacements_within(int dim, int max_l1) {
  std::vector<Displacement> out;
  std::vector<int> c(static_cast<std::size_t>(dim), -max_l1);
  while (true) {
    Displacement d{c};
    if (d.l1() <= max_l1) out.push_back(d);
    int i = dim - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == max_l1) {
      c[static_cast<std::size_t>(i)] = -max_l1;
      --i;
    }
    if (i < 0) break;
    ++c[static_cast<std::size_t>(i)];
  }
  return out;
}

CovarianceSeries estimate_covariances(const SampleTable& samples,
                                      const LatticeSpec& lattice,
                                      const ObservableSpec& f,
                                      const ObservableSpec& g,
                                      const std::vector<Displacement>& displacements,
                                      std::size_t batches) {
  const std::size_t R = samples.records();
  if (R < 100) {
    throw DataError("insufficient samples: " + std::to_string(R) +
                    " records, need >= 100");
  }
  const std::size_t N = samples.sites;
  if (N != lattice.site_count()) throw DataError("sample width does not match lattice");

  std::vector<double> fv(R * N), gv(R * N);
  for (std::size_t i = 0; i < R * N; ++i) {
    fv[i] = f.phi(samples.x[i]);
    gv[i] = g.phi(samples.x[i]);
  }
  const bool torus = lattice.boundary == Boundary::kTorus;
  std::vector<std::size_t> bases;
  if (torus) {
    bases.resize(N);
    std::iota(bases.begin(), bases.end(), 0);
  } else {
    if (f.base_site >= N) throw DataError("base site outside the lattice");
    bases.push_back(f.base_site);
  }

  CovarianceSeries out;
  out.displacements = displacements;
  out.n_samples = R;
  out.batches = batches;
  out.f_name = f.name();
  out.g_name = g.name();
  out.translation_averaged = torus;
  const std::vector<std::size_t> edges = batch_edges(R, batches);

  for (const Displacement& k : displacements) {
    std::vector<std::size_t> partner(bases.size());
    for (std::size_t b = 0; b < bases.size(); ++b) {
      partner[b] = lattice.translate(bases[b], k);
      if (partner[b] == Neighbor::kShell) {
        throw DataError("displacement " + k.to_string() + " leaves the volume");
      }
    }
    // Sums over a record range of f, g and f*g at the paired sites.
    auto estimate = [&](std::size_t r0, std::size_t r1) {
      double sf = 0.0, sg = 0.0, sfg = 0.0;
      for (std::size_t r = r0; r < r1; ++r) {
        const double* fr = &fv[r * N];
        const double* gr = &gv[r * N];
        for (std::size_t b = 0; b < bases.size(); ++b) {
          const double a = fr[bases[b]], c = gr[partner[b]];
          sf += a;
          sg += c;
          sfg += a * c;
        }
      }
      const double m = static_cast<double>((r1 - r0) * bases.size());
      return sfg / m - (sf / m) * (sg / m);
    };
    std::vector<double> per_batch;
    for (std::size_t b = 0; b + 1 < edges.size(); ++b) {
      per_batch.push_back(estimate(edges[b], edges[b + 1]));
    }
    out.cov.push_back(estimate(0, R));
    out.stderr_.push_back(spread_error(per_batch));
  }
  return out;
}

DecayFit fit_decay_rate(const CovarianceSeries& series) {
  DecayFit fit;
  fit.included.assign(series.cov.size(), false);
  double sw = 0.0, sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::vector<std::array<double, 3>> pts;
  for (std::size_t i = 0; i < series.cov.size(); ++i) {
    const double c = std::abs(series.cov[i]);
    const double se = series.stderr_[i];
    if (!(c > 3.0 * se)) continue;
    fit.included[i] = true;
    const double x = series.displacements[i].l1();
    const double y = std::log(c);
    const double w = (c / se) * (c / se);
    pts.push_back({x, y, w});
    sw += w;
    sx += w * x;
    sy += w * y;
    sxx += w * x * x;
    sxy += w * x * y;
  }
  fit.points = pts.size();
  const double det = sw * sxx - sx * sx;
  if (pts.size() < 3 || !(det > 1e-12 * sw * sxx)) {
    throw NumericError("no signal: fewer than 3 displacements (at 2 distinct "
                       "distances) pass the 3-sigma cut");
  }
  const double slope = (sw * sxy - sx * sy) / det;
  fit.intercept = (sy - slope * sx) / sw;
  fit.rate = -slope;
  const double ybar = sy / sw;
  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& [x, y, w] : pts) {
    const double r = y - (fit.intercept + slope * x);
    ss_res += w * r * r;
    ss_tot += w * (y - ybar) * (y - ybar);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

BoundReport make_bound(std::string name, double lhs, double rhs,
                       double stat_error, double numeric_tol, std::string note) {
  BoundReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.slack = rhs - lhs;
  r.stat_error = stat_error;
  r.numeric_tol = numeric_tol;
  r.pass = lhs <= rhs + 3.0 * stat_error + numeric_tol;
  r.equality = std::isfinite(rhs) &&
               std::abs(r.slack) <= std::max(numeric_tol, 1e-9 * std::abs(rhs));
  r.note = std::move(note);
  return r;
}

BoundReport check_decay_bound(const CovarianceSeries& series,
                              const DobrushinReport& dobrushin,
                              const Semimetric& metric, double delta_f,
                              double delta_g) {
  const double contraction = dobrushin.lambda * dobrushin.gamma_d;
  if (!(contraction < 1.0)) {
    throw ConditionError("outside uniqueness region: lambda gamma_d = " +
                         std::to_string(contraction));
  }
  double lhs = 0.0, stat = 0.0;
  for (std::size_t i = 0; i < series.cov.size(); ++i) {
    const double w = metric.weight(series.displacements[i]);
    lhs += w * std::abs(series.cov[i]);
    stat += w * series.stderr_[i];
  }
  const double rhs = delta_f * delta_g / (1.0 - contraction);
  // gamma_d carries the optimizer tolerance into the right side.
  double weight_sum = 0.0;
  for (const auto& [j, c] : dobrushin.C) weight_sum += metric.weight(j);
  const double rhs_tol = rhs / (1.0 - contraction) * dobrushin.lambda *
                         dobrushin.tolerance * weight_sum;
  return make_bound("decay bound", lhs, rhs, stat, rhs_tol + 1e-12,
                    "partial sum (lower bound on LHS) over " +
                        std::to_string(series.cov.size()) + " displacements");
}

namespace {

// rho(x, 0) on the sample range by cubic Hermite interpolation of exact
// cell integrals of sqrt(F'').
class RhoTable {
 public:
  RhoTable(const SelfPotential& F, double lo, double hi) : F_(F) {
    lo_ = std::min(lo, 0.0) - 1e-9;
    hi_ = std::max(hi, 0.0) + 1e-9;
    const std::size_t cells = std::max<std::size_t>(
        16, static_cast<std::size_t>(std::ceil((hi_ - lo_) / 0.005)));
    step_ = (hi_ - lo_) / static_cast<double>(cells);
    values_.resize(cells + 1);
    // Start from the node nearest 0 so both directions accumulate from it.
    const auto zero = static_cast<std::size_t>(std::llround(-lo_ / step_));
    auto sqrt_curv = [&](double s) { return std::sqrt(F_.curvature(s)); };
    values_[zero] = cumulative_rho(F_, node(zero));
    for (std::size_t i = zero; i < cells; ++i) {
      values_[i + 1] =
          values_[i] + integrate_interval(sqrt_curv, node(i), node(i + 1)).value;
    }
    for (std::size_t i = zero; i > 0; --i) {
      values_[i - 1] =
          values_[i] - integrate_interval(sqrt_curv, node(i - 1), node(i)).value;
    }
  }

  double operator()(double x) const {
    const double t = (x - lo_) / step_;
    const std::size_t i = std::min(static_cast<std::size_t>(std::max(t, 0.0)),
                                   values_.size() - 2);
    const double s = t - static_cast<double>(i);
    const double d0 = step_ * std::sqrt(F_.curvature(node(i)));
    const double d1 = step_ * std::sqrt(F_.curvature(node(i + 1)));
    const double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    const double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * values_[i] + h10 * d0 + h01 * values_[i + 1] + h11 * d1;
  }

 private:
  double node(std::size_t i) const { return lo_ + step_ * static_cast<double>(i); }

  const SelfPotential& F_;
  double lo_ = 0.0, hi_ = 0.0, step_ = 0.0;
  std::vector<double> values_;
};

}  // namespace

std::vector<BoundReport> check_moment_bounds(const SampleTable& samples,
                                             const SelfPotential& F, double a,
                                             std::size_t batches) {
  const double eps = F.epsilon;
  if (!(a >= 0.0 && a < eps / 2.0)) {
    throw ConfigError("a out of range: need 0 <= a < eps/2 = " +
                      std::to_string(eps / 2.0));
  }
  const std::size_t R = samples.records(), N = samples.sites;
  if (R == 0) throw DataError("insufficient samples: no records");
  const auto [mn, mx] = std::minmax_element(samples.x.begin(), samples.x.end());
  const RhoTable rho(F, *mn, *mx);

  MeanEstimate best_sq, best_exp, best_rho;
  best_sq.mean = best_exp.mean = best_rho.mean = -1.0;
  std::vector<double> sq(R), ex(R), rr(R);
  for (std::size_t k = 0; k < N; ++k) {
    for (std::size_t r = 0; r < R; ++r) {
      const double x = samples.at(r, k);
      sq[r] = x * x;
      ex[r] = std::exp(a * x * x);
      const double p = rho(x);
      rr[r] = p * p;
    }
    const MeanEstimate m_sq = batch_means(sq, batches);
    const MeanEstimate m_ex = batch_means(ex, batches);
    const MeanEstimate m_rr = batch_means(rr, batches);
    if (m_sq.mean > best_sq.mean) best_sq = m_sq;
    if (m_ex.mean > best_exp.mean) best_exp = m_ex;
    if (m_rr.mean > best_rho.mean) best_rho = m_rr;
  }
  std::vector<BoundReport> out;
  out.push_back(make_bound("second moment", best_sq.mean, 1.0 / eps,
                           best_sq.stderr_, 0.0, "site-max E x_k^2 <= 1/eps"));
  out.push_back(make_bound("exponential moment", best_exp.mean,
                           std::exp(a / (eps - 2.0 * a)), best_exp.stderr_, 0.0,
                           "site-max E exp(a x_k^2) <= exp(a/(eps-2a)), a = " +
                               std::to_string(a)));
  BoundReport m = make_bound("m_mu", best_rho.mean,
                             std::numeric_limits<double>::infinity(),
                             best_rho.stderr_, 0.0,
                             "site-max E rho^2(x_k, 0); finite value, no bound claimed");
  m.pass = std::isfinite(best_rho.mean);
  out.push_back(m);
  return out;
}

BrascampLiebReport verify_brascamp_lieb_1d(const SelfPotential& F,
                                           const TestFunction& phi) {
  const Density1D d = density_of(F);
  const auto q = integrate_many(
      d, {phi.value, [&](double x) { return phi.value(x) * phi.value(x); },
          [&](double x) {
            const double p = phi.derivative(x);
            return p * p / F.curvature(x);
          },
          [&](double x) {
            const double p = phi.derivative(x);
            return p * p;
          }});
  const double mean = q[0].value;
  const double variance = q[1].value - mean * mean;
  const double var_err = q[1].abs_error_estimate + 2.0 * std::abs(mean) * q[0].abs_error_estimate;
  const double weighted = q[2].value;
  const double poincare = q[3].value / F.epsilon;
  const double poincare_err = q[3].abs_error_estimate / F.epsilon;

  BrascampLiebReport r;
  r.quadrature_error = std::max({var_err, q[2].abs_error_estimate, poincare_err});
  const double tol = 10.0 * r.quadrature_error + 1e-12;
  r.variance_vs_weighted = make_bound("Brascamp-Lieb [" + phi.name + "]",
                                      variance, weighted, 0.0, tol,
                                      "cov(phi,phi) <= E[phi'^2/F'']");
  r.weighted_vs_poincare = make_bound("Poincare comparison [" + phi.name + "]",
                                      weighted, poincare, 0.0, tol,
                                      "E[phi'^2/F''] <= E[phi'^2]/eps");
  try {
    const double delta = delta_k(phi, F);
    r.seminorm_applicable = true;
    r.weighted_vs_seminorm = make_bound("seminorm chain [" + phi.name + "]",
                                        weighted, delta * delta, 0.0, tol,
                                        "E[phi'^2/F''] <= delta(phi)^2");
  } catch (const NumericError& e) {
    r.weighted_vs_seminorm.name = "seminorm chain [" + phi.name + "]";
    r.weighted_vs_seminorm.note = std::string("not applicable: ") + e.what();
    r.weighted_vs_seminorm.pass = true;
  }
  return r;
}

BoundReport verify_lsi_1d(const SelfPotential& F, double epsilon,
                          const TestFunction& phi) {
  const Density1D d = density_of(F);
  const auto q = integrate_many(
      d, {[&](double x) { return phi.value(x) * phi.value(x); },
          [&](double x) {
            const double s = phi.value(x) * phi.value(x);
            return s * std::log(std::max(s, 1e-300));
          },
          [&](double x) {
            const double p = phi.derivative(x);
            return p * p;
          }});
  const double mass = q[0].value;
  const double entropy =
      q[1].value - (mass > 0.0 ? mass * std::log(mass) : 0.0);
  const double bound = 2.0 / epsilon * q[2].value;
  const double err = q[1].abs_error_estimate +
                     q[0].abs_error_estimate * (std::abs(std::log(std::max(mass, 1e-300))) + 1.0) +
                     2.0 / epsilon * q[2].abs_error_estimate;
  return make_bound("log-Sobolev [" + phi.name + "]", entropy, bound, 0.0,
                    10.0 * err + 1e-12, "Ent(phi^2) <= (2/eps) E[phi'^2]");
}

namespace {

// Grid scan of [lo, hi] followed by local grid refinement around the best
// node; tolerance is the gain of the last round.
Maximum1D maximize_on_interval(const RealFunction& f, double lo, double hi,
                               int grid = 1025, int rounds = 8) {
  Maximum1D best;
  best.value = -std::numeric_limits<double>::infinity();
  double step = (hi - lo) / (grid - 1);
  for (int i = 0; i < grid; ++i) {
    const double x = lo + step * i;
    const double v = f(x);
    if (!std::isfinite(v)) throw NumericError("grid-sup not converged: non-finite value");
    if (v > best.value) {
      best.value = v;
      best.x = x;
    }
  }
  for (int r = 0; r < rounds; ++r) {
    const double before = best.value;
    const double center = best.x;
    step /= 4.0;
    for (int i = -16; i <= 16; ++i) {
      const double x = std::clamp(center + step * i, lo, hi);
      const double v = f(x);
      if (!std::isfinite(v)) throw NumericError("grid-sup not converged: non-finite value");
      if (v > best.value) {
        best.value = v;
        best.x = x;
      }
    }
    best.tolerance = best.value - before;
  }
  best.on_boundary = best.x <= lo || best.x >= hi;
  return best;
}

}  // namespace

ConditionalExpectation two_site_conditional(const SelfPotential& F,
                                            const Polynomial& G, double lambda,
                                            const TestFunction& phi0,
                                            const TestFunction& phi1, double x1) {
  Polynomial ld = F.poly * -1.0;
  ld.add_scaled_shifted(G, x1, -lambda);
  const Density1D d = make_density(std::move(ld), F.epsilon, kDefaultTailTolerance, 0.0);
  const Polynomial Gp = G.derivative();
  // d/dx_1 of G(x_0 - x_1) is -G'(x_0 - x_1).
  const auto q = integrate_many(
      d, {phi0.value, [&](double x0) { return -Gp(x0 - x1); },
          [&](double x0) { return phi0.value(x0) * -Gp(x0 - x1); }});
  const double m0 = q[0].value;
  const double cov = q[2].value - m0 * q[1].value;
  ConditionalExpectation out;
  out.value = m0 * phi1.value(x1);
  out.derivative = phi1.derivative(x1) * m0 - lambda * phi1.value(x1) * cov;
  return out;
}

ContractionReport verify_contraction(const SelfPotential& F, const Polynomial& G,
                                     double lambda, double C01,
                                     const TestFunction& phi0,
                                     const TestFunction& phi1) {
  ContractionReport r;
  r.C01 = C01;
  r.delta1_f = sup_abs(phi0) * delta_k(phi1, F);
  r.delta0_f = delta_k(phi0, F) * sup_abs(phi1);

  auto weighted = [&](double x1) {
    return std::abs(two_site_conditional(F, G, lambda, phi0, phi1, x1).derivative) /
           std::sqrt(F.curvature(x1));
  };
  // x_1 ranges over the truncation interval of exp(-F).
  const Density1D marginal = density_of(F);
  const Maximum1D sup = maximize_on_interval(weighted, marginal.lo, marginal.hi);
  r.argsup_x1 = sup.x;

  // Central differences of mu_0(f) at three probe points.
  const double h = 1e-4;
  for (double x1 : {-0.7, 0.3, sup.x}) {
    const double up = two_site_conditional(F, G, lambda, phi0, phi1, x1 + h).value;
    const double dn = two_site_conditional(F, G, lambda, phi0, phi1, x1 - h).value;
    const double fd = (up - dn) / (2.0 * h);
    const double exact = two_site_conditional(F, G, lambda, phi0, phi1, x1).derivative;
    r.fd_max_deviation = std::max(r.fd_max_deviation, std::abs(fd - exact));
  }

  const double rhs = r.delta1_f + lambda * C01 * r.delta0_f;
  r.bound = make_bound("one-step contraction [" + phi0.name + " ; " + phi1.name + "]",
                       sup.value, rhs, 0.0, 1e-8 + sup.tolerance,
                       "sup |d_1 mu_0(f)| / sqrt(F''(x_1)) <= delta_1(f) + "
                       "lambda C_01 delta_0(f)");
  return r;
}

}  // namespace polygibbs
