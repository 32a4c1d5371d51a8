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

#include "polygibbs/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace polygibbs {

Polynomial::Polynomial(std::vector<double> coefficients)
    : coeffs_(std::move(coefficients)) {
  trim();
}

Polynomial Polynomial::monomial(double coefficient, int power) {
  std::vector<double> c(static_cast<std::size_t>(power) + 1, 0.0);
  c.back() = coefficient;
  return Polynomial(std::move(c));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::coefficient(int power) const {
  if (power < 0 || power > degree()) return 0.0;
  return coeffs_[static_cast<std::size_t>(power)];
}

double Polynomial::eval(double x, int order) const {
  const int n = degree();
  if (order > n) return 0.0;
  double acc = 0.0;
  for (int i = n; i >= order; --i) {
    double falling = 1.0;
    for (int k = 0; k < order; ++k) falling *= static_cast<double>(i - k);
    acc = acc * x + falling * coeffs_[static_cast<std::size_t>(i)];
  }
  return acc;
}

Polynomial::Jet Polynomial::jet(double x) const {
  double p = 0.0, d1 = 0.0, d2 = 0.0;
  for (int i = degree(); i >= 0; --i) {
    d2 = d2 * x + 2.0 * d1;
    d1 = d1 * x + p;
    p = p * x + coeffs_[static_cast<std::size_t>(i)];
  }
  return {p, d1, d2};
}

Polynomial Polynomial::derivative() const {
  if (degree() < 1) return {};
  std::vector<double> c(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    c[i - 1] = static_cast<double>(i) * coeffs_[i];
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::shifted(double shift) const {
  Polynomial out;
  out.add_scaled_shifted(*this, -shift, 1.0);
  return out;
}

Polynomial Polynomial::reflected() const {
  std::vector<double> c = coeffs_;
  for (std::size_t i = 1; i < c.size(); i += 2) c[i] = -c[i];
  return Polynomial(std::move(c));
}

void Polynomial::add_scaled_shifted(const Polynomial& g, double center,
                                    double scale) {
  const std::size_t m = g.coeffs_.size();
  if (m == 0 || scale == 0.0) return;
  if (coeffs_.size() < m) coeffs_.resize(m, 0.0);
  // Taylor shift in place on a copy: repeated synthetic division by
  // (x + center) turns coefficients in x into coefficients in (x - center).
  double local[32];
  std::vector<double> heap;
  double* a = local;
  if (m > 32) {
    heap.resize(m);
    a = heap.data();
  }
  std::copy(g.coeffs_.begin(), g.coeffs_.end(), a);
  const double t = -center;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    for (std::size_t i = m - 1; i > k; --i) a[i - 1] += t * a[i];
  }
  for (std::size_t i = 0; i < m; ++i) coeffs_[i] += scale * a[i];
  trim();
}

std::vector<double> Polynomial::real_roots() const {
  const int n = degree();
  std::vector<double> roots;
  if (n < 1) return roots;
  if (n == 1) {
    roots.push_back(-coeffs_[0] / coeffs_[1]);
    return roots;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) {
    companion(i, n - 1) = -coeffs_[static_cast<std::size_t>(i)] / leading();
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const Polynomial d = derivative();
  for (const auto& z : solver.eigenvalues()) {
    if (std::abs(z.imag()) > 1e-6 * (1.0 + std::abs(z))) continue;
    double x = z.real();
    for (int it = 0; it < 8; ++it) {
      const double slope = d(x);
      if (slope == 0.0) break;
      const double step = (*this)(x) / slope;
      if (!std::isfinite(step)) break;
      x -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(x))) break;
    }
    roots.push_back(x);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (coeffs_.size() < other.coeffs_.size()) {
    coeffs_.resize(other.coeffs_.size(), 0.0);
  }
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
    coeffs_[i] += other.coeffs_[i];
  }
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  return *this += other * -1.0;
}

Polynomial& Polynomial::operator*=(double scale) {
  for (double& c : coeffs_) c *= scale;
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      c[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return Polynomial(std::move(c));
}

Polynomial pow(const Polynomial& p, int power) {
  Polynomial out = Polynomial::constant(1.0);
  for (int i = 0; i < power; ++i) out = out * p;
  return out;
}

}  // namespace polygibbs
