// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CAVDDM_POLYNOMIAL_HPP
#define CAVDDM_POLYNOMIAL_HPP

#include <initializer_list>
#include <string>
#include <vector>
#include <gmpxx.h>
#include "cavddm/bigfloat.hpp"

namespace cavddm
{

//
// Polynomial in w = z^2 with exact rational coefficients, stored in ascending powers.
// The zero polynomial has an empty coefficient list and degree -1.
//
class PolynomialW
{
public:
  PolynomialW() = default;
  explicit PolynomialW(std::vector<mpq_class> coeffs);
  PolynomialW(std::initializer_list<long> coeffs);

  static PolynomialW Constant(const mpq_class &c);
  static PolynomialW Monomial(const mpq_class &c, int power);

  int Degree() const { return static_cast<int>(c_.size()) - 1; }
  bool IsZero() const { return c_.empty(); }
  const std::vector<mpq_class> &Coefficients() const { return c_; }
  const mpq_class &operator[](int i) const { return c_[i]; }
  mpq_class Coefficient(int i) const;
  const mpq_class &Leading() const { return c_.back(); }

  PolynomialW Derivative() const;

  mpq_class Evaluate(const mpq_class &w) const;
  double Evaluate(double w) const;
  BigFloat Evaluate(const BigFloat &w) const;
  BigComplex Evaluate(const BigComplex &w) const;

  // Sum of |c_i| |w|^i, the scale against which rounding in Evaluate is measured.
  BigFloat AbsoluteScale(const BigFloat &abs_w) const;

  PolynomialW &operator+=(const PolynomialW &o);
  PolynomialW &operator-=(const PolynomialW &o);
  friend PolynomialW operator+(PolynomialW a, const PolynomialW &b) { return a += b; }
  friend PolynomialW operator-(PolynomialW a, const PolynomialW &b) { return a -= b; }
  friend PolynomialW operator*(const PolynomialW &a, const PolynomialW &b);
  friend PolynomialW operator*(const mpq_class &a, const PolynomialW &b);
  friend bool operator==(const PolynomialW &a, const PolynomialW &b) { return a.c_ == b.c_; }

  std::string ToString() const;

private:
  void Normalize();

  std::vector<mpq_class> c_;
};

}  // namespace cavddm

#endif  // CAVDDM_POLYNOMIAL_HPP
