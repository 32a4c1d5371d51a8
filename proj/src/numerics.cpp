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

#include "polygibbs/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "polygibbs/error.hpp"
#include "polygibbs/potentials.hpp"

namespace polygibbs {
namespace {

// 8-point Gauss-Legendre rule on [-1, 1], symmetric half.
constexpr std::array<double, 4> kGaussNodes = {
    0.1834346424956498049394761, 0.5255324099163289858177390,
    0.7966664774136267395915539, 0.9602898564975362316835609};
constexpr std::array<double, 4> kGaussWeights = {
    0.3626837833783619829651504, 0.3137066458778872873379622,
    0.2223810344533744705443560, 0.1012285362903762591525314};

// Sum of w_i f(x_i) over the rule mapped to [a, b].
template <class Fn>
double gauss_panel(double a, double b, Fn&& f) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
    const double dx = half * kGaussNodes[i];
    acc += kGaussWeights[i] * (f(mid - dx) + f(mid + dx));
  }
  return acc * half;
}

bool agrees(double a, double b, double abs_tol, double rel_tol) {
  return std::abs(a - b) <= abs_tol + rel_tol * std::abs(b);
}

double error_floor(double value) {
  return 1e-14 * std::max(1.0, std::abs(value));
}

// Integral of exp(s u - c u^2 / 2) over u in [t, inf).
double envelope_tail(double s, double c, double t) {
  const double mu = s / c;
  const double log_scale = s * s / (2.0 * c);
  return std::exp(log_scale) * std::sqrt(std::numbers::pi / (2.0 * c)) *
         std::erfc((t - mu) * std::sqrt(c / 2.0));
}

// Lower bound on the integral of exp(ld(m + u) - ld(m)) for u in [0, h]
// from the chord of the concave log-density.
double chord_mass(double drop, double h) {
  if (drop == 0.0) return h;
  return h * std::expm1(drop) / drop;
}

struct SideBound {
  double extent;  // distance from the mode
  double tail;    // certified tail mass beyond it, in units of exp(peak)
};

// direction = +1 for the right tail, -1 for the left.
SideBound tail_side(const Polynomial& ld, double mode, double peak,
                    double slope_at_mode, double convexity, double target,
                    int direction) {
  const double s = direction * slope_at_mode;
  double t_hi = std::max(0.0, s / convexity) + 1.0 / std::sqrt(convexity);
  while (envelope_tail(s, convexity, t_hi) > target) t_hi *= 2.0;
  double t_lo = 0.0;
  for (int it = 0; it < 60 && t_hi - t_lo > 1e-9 * t_hi; ++it) {
    const double t = 0.5 * (t_lo + t_hi);
    (envelope_tail(s, convexity, t) > target ? t_lo : t_hi) = t;
  }
  SideBound best{t_hi, envelope_tail(s, convexity, t_hi)};

  // Support line at p: for concave ld the tail beyond p is at most
  // exp(ld(p) - peak) / |ld'(p)|.
  auto support_tail = [&](double t) {
    const Polynomial::Jet j = ld.jet(mode + direction * t);
    const double outward = direction * j.first;
    if (outward >= 0.0) return std::numeric_limits<double>::infinity();
    return std::exp(j.value - peak) / -outward;
  };
  if (support_tail(best.extent) <= target) {
    double lo = 0.0, hi = best.extent;
    for (int it = 0; it < 60 && hi - lo > 1e-9 * hi; ++it) {
      const double t = 0.5 * (lo + hi);
      (support_tail(t) > target ? lo : hi) = t;
    }
    const double tail = support_tail(hi);
    if (hi < best.extent) best = {hi, tail};
  }
  return best;
}

struct PanelLevel {
  std::size_t panels;
  double width;
};

}  // namespace

double Density1D::scaled(double x) const {
  return std::exp(log_density(x) - log_peak);
}

double find_mode(const Polynomial& ld, double hint) {
  auto slope = [&](double x) { return ld.jet(x).first; };
  double s0 = slope(hint);
  if (s0 == 0.0) return hint;
  const int dir = s0 > 0.0 ? 1 : -1;
  const double c0 = -ld.jet(hint).second;
  double step = c0 > 0.0 ? std::max(std::abs(s0) / c0, 1e-3) : 1.0;
  double a = hint, b = hint + dir * step;
  for (int it = 0; dir * slope(b) > 0.0; ++it) {
    if (it > 200) throw NumericError("mode search failed: density not log-concave");
    a = b;
    step *= 2.0;
    b = hint + dir * step;
  }
  // Bracket [lo, hi] with slope(lo) > 0 > slope(hi).
  double lo = std::min(a, b), hi = std::max(a, b);
  double x = dir > 0 ? lo : hi;
  for (int it = 0; it < 200; ++it) {
    const Polynomial::Jet j = ld.jet(x);
    if (j.first == 0.0) return x;
    (j.first > 0.0 ? lo : hi) = x;
    double next = j.second < 0.0 ? x - j.first / j.second : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-15 * (1.0 + std::abs(x)) ||
        hi - lo <= 1e-15 * (1.0 + std::abs(x))) {
      return next;
    }
    x = next;
  }
  return x;
}

TruncationBounds truncate(const Polynomial& ld, double mode, double convexity,
                          double tol) {
  if (!(convexity > 0.0) || !std::isfinite(convexity)) {
    throw NumericError("envelope failure: convexity parameter must be > 0");
  }
  const Polynomial::Jet at_mode = ld.jet(mode);
  const double peak = at_mode.value;

  const double width = 1.0 / std::sqrt(std::max(convexity, -at_mode.second));
  double mass_lb = 0.0;
  for (double scale : {0.25, 0.5, 1.0, 2.0}) {
    const double h = scale * width;
    const double m = chord_mass(ld(mode + h) - peak, h) +
                     chord_mass(ld(mode - h) - peak, h);
    mass_lb = std::max(mass_lb, m);
  }
  const double target = 0.5 * tol * mass_lb;
  const SideBound right =
      tail_side(ld, mode, peak, at_mode.first, convexity, target, +1);
  const SideBound left =
      tail_side(ld, mode, peak, at_mode.first, convexity, target, -1);
  return {mode - left.extent, mode + right.extent,
          (left.tail + right.tail) / mass_lb};
}

Density1D make_density(Polynomial log_density, double convexity, double tol,
                       double hint) {
  Density1D d;
  d.mode = find_mode(log_density, hint);
  const TruncationBounds bounds = truncate(log_density, d.mode, convexity, tol);
  d.log_slope = log_density.derivative();
  d.log_curvature = d.log_slope.derivative();
  d.log_peak = log_density(d.mode);
  d.lo = bounds.lo;
  d.hi = bounds.hi;
  d.tail_mass_bound = bounds.tail_mass_bound;
  d.log_density = std::move(log_density);
  return d;
}

Density1D density_of(const SelfPotential& F, double tol) {
  return make_density(F.poly * -1.0, F.epsilon, tol, 0.0);
}

std::vector<QuadratureResult> integrate_many(
    const Density1D& d, const std::vector<RealFunction>& functions,
    const QuadratureOptions& options) {
  const std::size_t k = functions.size();
  std::vector<double> prev(k + 1, 0.0), sums(k + 1, 0.0);
  bool have_prev = false;
  for (std::size_t panels = options.initial_panels;
       panels * 2 * kGaussNodes.size() <= options.max_nodes; panels *= 2) {
    std::fill(sums.begin(), sums.end(), 0.0);
    const double width = (d.hi - d.lo) / static_cast<double>(panels);
    for (std::size_t p = 0; p < panels; ++p) {
      const double a = d.lo + width * static_cast<double>(p);
      const double mid = a + 0.5 * width, half = 0.5 * width;
      for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
        for (double sign : {-1.0, 1.0}) {
          const double x = mid + sign * half * kGaussNodes[i];
          const double w = kGaussWeights[i] * half * d.scaled(x);
          sums[k] += w;
          for (std::size_t f = 0; f < k; ++f) sums[f] += w * functions[f](x);
        }
      }
    }
    const std::size_t nodes = panels * 2 * kGaussNodes.size();
    if (!(sums[k] > 0.0) || !std::isfinite(sums[k])) {
      throw NumericError("non-convergent: density mass is not positive");
    }
    for (std::size_t f = 0; f < k; ++f) sums[f] /= sums[k];
    if (have_prev) {
      bool done = agrees(prev[k], sums[k], 0.0, options.rel_tol);
      for (std::size_t f = 0; f < k && done; ++f) {
        done = agrees(prev[f], sums[f], options.abs_tol, options.rel_tol);
      }
      if (done) {
        std::vector<QuadratureResult> out(k);
        for (std::size_t f = 0; f < k; ++f) {
          out[f] = {sums[f],
                    std::max(std::abs(sums[f] - prev[f]), error_floor(sums[f])),
                    nodes};
        }
        return out;
      }
    }
    prev = sums;
    have_prev = true;
  }
  throw NumericError("non-convergent: quadrature exceeded node budget");
}

QuadratureResult integrate(const Density1D& density, const RealFunction& g,
                           const QuadratureOptions& options) {
  return integrate_many(density, {g}, options).front();
}

QuadratureResult integrate_interval(const RealFunction& f, double a, double b,
                                    const QuadratureOptions& options) {
  if (a == b) return {0.0, 0.0, 0};
  double prev = 0.0;
  bool have_prev = false;
  for (std::size_t panels = options.initial_panels;
       panels * 2 * kGaussNodes.size() <= options.max_nodes; panels *= 2) {
    const double width = (b - a) / static_cast<double>(panels);
    double sum = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
      const double lo = a + width * static_cast<double>(p);
      sum += gauss_panel(lo, lo + width, f);
    }
    if (!std::isfinite(sum)) throw NumericError("non-convergent: integrand not finite");
    if (have_prev && agrees(prev, sum, options.abs_tol, options.rel_tol)) {
      return {sum, std::max(std::abs(sum - prev), error_floor(sum)),
              panels * 2 * kGaussNodes.size()};
    }
    prev = sum;
    have_prev = true;
  }
  throw NumericError("non-convergent: quadrature exceeded node budget");
}

double quantile(const Density1D& d, double u, double cdf_tol) {
  thread_local std::vector<double> cumulative;
  auto density = [&](double x) { return d.scaled(x); };

  double prev_total = 0.0, total = 0.0, width = 0.0;
  bool converged = false;
  for (std::size_t panels = 8; panels * 2 * kGaussNodes.size() <=
                               kDefaultNodeBudget;
       panels *= 2) {
    width = (d.hi - d.lo) / static_cast<double>(panels);
    cumulative.resize(panels);
    total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
      const double a = d.lo + width * static_cast<double>(p);
      const double mass = gauss_panel(a, a + width, density);
      if (!(mass > 0.0)) throw NumericError("non-monotone cumulative table");
      total += mass;
      cumulative[p] = total;
    }
    if (prev_total > 0.0 && agrees(prev_total, total, 0.0, 0.1 * cdf_tol)) {
      converged = true;
      break;
    }
    prev_total = total;
  }
  if (!converged || !(total > 0.0)) {
    throw NumericError("non-convergent: cumulative table exceeded node budget");
  }

  const double target = u * total;
  const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
  const std::size_t panel =
      std::min<std::size_t>(static_cast<std::size_t>(it - cumulative.begin()),
                            cumulative.size() - 1);
  const double base = panel == 0 ? 0.0 : cumulative[panel - 1];
  const double mass = cumulative[panel] - base;
  if (!(mass > 0.0)) throw NumericError("non-monotone cumulative table");
  const double a = d.lo + width * static_cast<double>(panel);
  const double want = std::clamp(target - base, 0.0, mass);

  // Bracketed Newton on H(x) = integral of the density over [a, x].
  double lo = a, hi = a + width;
  double x = a + width * (want / mass);
  const double residual_tol = 1e-3 * cdf_tol * total;
  for (int iter = 0; iter < 100; ++iter) {
    const double h = gauss_panel(a, x, density) - want;
    if (std::abs(h) <= residual_tol) break;
    (h < 0.0 ? lo : hi) = x;
    const double p = density(x);
    double next = p > 0.0 ? x - h / p : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() *
                       (std::abs(a) + width)) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

double sample_logconcave(const Density1D& density, RngStream& rng,
                         double cdf_tol) {
  return quantile(density, rng.uniform(), cdf_tol);
}

namespace {

struct GridPoint {
  double t = 0.0, s = 0.0, value = -std::numeric_limits<double>::infinity();
};

// Shared refinement driver: `dims` is 1 or 2, the second angle is ignored
// in one dimension.
template <class Eval>
GridPoint refine_compactified(Eval&& eval, int dims,
                              const MaximizerOptions& opt, double& tolerance,
                              bool& on_boundary) {
  constexpr double kHalfPi = std::numbers::pi / 2.0;
  const double h = std::numbers::pi / (opt.grid + 1);
  auto is_boundary = [&](const GridPoint& p) {
    const double edge = kHalfPi - 1.5 * h;
    return std::abs(p.t) > edge || (dims == 2 && std::abs(p.s) > edge);
  };
  auto check = [](double v) {
    if (std::isnan(v)) throw NumericError("divergent sup: objective is NaN");
    if (std::isinf(v) && v > 0) throw NumericError("divergent sup: objective is infinite");
    return v;
  };

  GridPoint best;
  for (int i = 0; i < opt.grid; ++i) {
    const double t = -kHalfPi + (i + 1) * h;
    for (int j = 0; j < (dims == 2 ? opt.grid : 1); ++j) {
      const double s = dims == 2 ? -kHalfPi + (j + 1) * h : 0.0;
      const double v = check(eval(t, s));
      if (v > best.value) best = {t, s, v};
    }
  }

  bool prev_boundary = is_boundary(best);
  double prev_gain = -1.0;
  tolerance = 0.0;
  double step = h;
  for (int round = 1; round <= opt.rounds; ++round) {
    step /= opt.shrink;
    const double before = best.value;
    const GridPoint center = best;
    const int w = opt.local_half_width;
    for (int i = -w; i <= w; ++i) {
      const double t = center.t + i * step;
      if (std::abs(t) >= kHalfPi) continue;
      for (int j = (dims == 2 ? -w : 0); j <= (dims == 2 ? w : 0); ++j) {
        const double s = center.s + j * step;
        if (std::abs(s) >= kHalfPi) continue;
        const double v = check(eval(t, s));
        if (v > best.value) best = {t, s, v};
      }
    }
    const double gain = best.value - before;
    const bool boundary = is_boundary(best);
    const double tiny = 1e-12 * std::max(1.0, std::abs(best.value));
    if (boundary && prev_boundary && gain > tiny && prev_gain >= 0.0 &&
        gain > 0.5 * prev_gain) {
      throw NumericError("divergent sup: maximum escapes to the boundary");
    }
    prev_boundary = boundary;
    prev_gain = gain;
    tolerance = gain;
  }
  on_boundary = is_boundary(best);
  return best;
}

}  // namespace

Maximum2D maximize_ratio(const std::function<double(double, double)>& f,
                         const MaximizerOptions& options) {
  Maximum2D out;
  const GridPoint best = refine_compactified(
      [&](double t, double s) { return f(std::tan(t), std::tan(s)); }, 2,
      options, out.tolerance, out.on_boundary);
  out.x = std::tan(best.t);
  out.y = std::tan(best.s);
  out.value = best.value;
  return out;
}

Maximum1D maximize_1d(const RealFunction& f, const MaximizerOptions& options) {
  Maximum1D out;
  const GridPoint best = refine_compactified(
      [&](double t, double) { return f(std::tan(t)); }, 1, options,
      out.tolerance, out.on_boundary);
  out.x = std::tan(best.t);
  out.value = best.value;
  return out;
}

double cumulative_rho(const SelfPotential& F, double x) {
  return integrate_interval(
             [&](double s) { return std::sqrt(F.curvature(s)); }, 0.0, x)
      .value;
}

}  // namespace polygibbs
