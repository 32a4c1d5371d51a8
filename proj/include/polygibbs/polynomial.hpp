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

#ifndef POLYGIBBS_POLYNOMIAL_HPP_
#define POLYGIBBS_POLYNOMIAL_HPP_

#include <span>
#include <vector>

namespace polygibbs {

// Dense real polynomial in one variable. Coefficient i multiplies x^i.
// Trailing zero coefficients are trimmed, so the zero polynomial has no
// coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<double> coefficients);

  static Polynomial monomial(double coefficient, int power);
  static Polynomial constant(double value) { return monomial(value, 0); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  double leading() const { return coeffs_.empty() ? 0.0 : coeffs_.back(); }
  double coefficient(int power) const;
  std::span<const double> coefficients() const { return coeffs_; }

  double operator()(double x) const { return eval(x, 0); }

  // Value of the order-th derivative at x, by Horner's rule on the
  // differentiated coefficients. Any order >= 0 is accepted.
  double eval(double x, int order) const;

  struct Jet {
    double value;
    double first;
    double second;
  };
  // Value, first and second derivative in a single pass.
  Jet jet(double x) const;

  Polynomial derivative() const;
  // q(x) = p(x + shift)
  Polynomial shifted(double shift) const;
  // q(x) = p(-x)
  Polynomial reflected() const;

  // Real roots, sorted ascending. Computed from the companion matrix and
  // polished by Newton steps; roots of multiplicity > 1 may appear once.
  std::vector<double> real_roots() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(double scale);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  // this += scale * g(x - center)
  void add_scaled_shifted(const Polynomial& g, double center, double scale);

 private:
  void trim();

  std::vector<double> coeffs_;
};

// p^power by repeated multiplication.
Polynomial pow(const Polynomial& p, int power);

}  // namespace polygibbs

#endif  // POLYGIBBS_POLYNOMIAL_HPP_
