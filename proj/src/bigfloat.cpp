// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "cavddm/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cavddm
{

namespace
{

mpfr_prec_t Joint(const BigFloat &a, const BigFloat &b)
{
  return std::max(a.Precision(), b.Precision());
}

}  // namespace

BigFloat::BigFloat(mpfr_prec_t prec)
{
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double v, mpfr_prec_t prec)
{
  mpfr_init2(v_, prec);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(const mpz_class &v, mpfr_prec_t prec)
{
  mpfr_init2(v_, prec);
  mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class &v, mpfr_prec_t prec)
{
  mpfr_init2(v_, prec);
  mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat &other)
{
  mpfr_init2(v_, other.Precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat &&other) noexcept
{
  mpfr_init2(v_, other.Precision());
  mpfr_swap(v_, other.v_);
}

BigFloat &BigFloat::operator=(const BigFloat &other)
{
  if (this != &other)
  {
    mpfr_set_prec(v_, other.Precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat &BigFloat::operator=(BigFloat &&other) noexcept
{
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

double BigFloat::Log2Abs() const
{
  if (IsZero())
  {
    return -std::numeric_limits<double>::infinity();
  }
  long exp = 0;
  const double mant = mpfr_get_d_2exp(&exp, v_, MPFR_RNDN);
  return std::log2(std::abs(mant)) + static_cast<double>(exp);
}

BigFloat &BigFloat::operator+=(const BigFloat &o)
{
  if (o.Precision() > Precision())
  {
    mpfr_prec_round(v_, o.Precision(), MPFR_RNDN);
  }
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat &BigFloat::operator-=(const BigFloat &o)
{
  if (o.Precision() > Precision())
  {
    mpfr_prec_round(v_, o.Precision(), MPFR_RNDN);
  }
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat &BigFloat::operator*=(const BigFloat &o)
{
  if (o.Precision() > Precision())
  {
    mpfr_prec_round(v_, o.Precision(), MPFR_RNDN);
  }
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat &BigFloat::operator/=(const BigFloat &o)
{
  if (o.Precision() > Precision())
  {
    mpfr_prec_round(v_, o.Precision(), MPFR_RNDN);
  }
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const
{
  BigFloat r(Precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat operator+(const BigFloat &a, const BigFloat &b)
{
  BigFloat r(Joint(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat &a, const BigFloat &b)
{
  BigFloat r(Joint(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat &a, const BigFloat &b)
{
  BigFloat r(Joint(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat &a, const BigFloat &b)
{
  BigFloat r(Joint(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat &a, double b)
{
  BigFloat r(a.Precision());
  mpfr_mul_d(r.v_, a.v_, b, MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat &a)
{
  BigFloat r(a.Precision());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat &a)
{
  BigFloat r(a.Precision());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigComplex &BigComplex::operator+=(const BigComplex &o)
{
  re += o.re;
  im += o.im;
  return *this;
}

BigComplex &BigComplex::operator-=(const BigComplex &o)
{
  re -= o.re;
  im -= o.im;
  return *this;
}

BigComplex operator+(const BigComplex &a, const BigComplex &b)
{
  return {a.re + b.re, a.im + b.im};
}

BigComplex operator-(const BigComplex &a, const BigComplex &b)
{
  return {a.re - b.re, a.im - b.im};
}

BigComplex operator*(const BigComplex &a, const BigComplex &b)
{
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

BigComplex operator*(const BigComplex &a, const BigFloat &b) { return {a.re * b, a.im * b}; }

BigComplex operator/(const BigComplex &a, const BigComplex &b)
{
  // Smith's algorithm keeps intermediate magnitudes bounded.
  if (abs(b.re) >= abs(b.im))
  {
    const BigFloat r = b.im / b.re;
    const BigFloat den = b.re + b.im * r;
    return {(a.re + a.im * r) / den, (a.im - a.re * r) / den};
  }
  const BigFloat r = b.re / b.im;
  const BigFloat den = b.re * r + b.im;
  return {(a.re * r + a.im) / den, (a.im * r - a.re) / den};
}

BigFloat norm(const BigComplex &z) { return z.re * z.re + z.im * z.im; }

}  // namespace cavddm
