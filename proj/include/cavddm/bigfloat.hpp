// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CAVDDM_BIGFLOAT_HPP
#define CAVDDM_BIGFLOAT_HPP

#include <complex>
#include <gmpxx.h>
#include <mpfr.h>

namespace cavddm
{

//
// Thin RAII wrapper around an MPFR number. Every value carries its own
// precision; binary operations produce the larger precision of the two operands.
//
class BigFloat
{
public:
  explicit BigFloat(mpfr_prec_t prec = 64);
  BigFloat(double v, mpfr_prec_t prec);
  BigFloat(const mpz_class &v, mpfr_prec_t prec);
  BigFloat(const mpq_class &v, mpfr_prec_t prec);
  BigFloat(const BigFloat &other);
  BigFloat(BigFloat &&other) noexcept;
  BigFloat &operator=(const BigFloat &other);
  BigFloat &operator=(BigFloat &&other) noexcept;
  ~BigFloat();

  mpfr_prec_t Precision() const { return mpfr_get_prec(v_); }
  double ToDouble() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool IsZero() const { return mpfr_zero_p(v_) != 0; }
  bool IsFinite() const { return mpfr_number_p(v_) != 0; }
  int Sign() const { return mpfr_sgn(v_); }

  // Binary exponent e such that |x| = m * 2^e with 0.5 <= m < 1; meaningful for x != 0.
  long Exponent() const { return mpfr_get_exp(v_); }

  // log2|x| as a double, valid for magnitudes far outside the double range.
  double Log2Abs() const;

  BigFloat &operator+=(const BigFloat &o);
  BigFloat &operator-=(const BigFloat &o);
  BigFloat &operator*=(const BigFloat &o);
  BigFloat &operator/=(const BigFloat &o);
  BigFloat operator-() const;

  friend BigFloat operator+(const BigFloat &a, const BigFloat &b);
  friend BigFloat operator-(const BigFloat &a, const BigFloat &b);
  friend BigFloat operator*(const BigFloat &a, const BigFloat &b);
  friend BigFloat operator/(const BigFloat &a, const BigFloat &b);
  friend BigFloat operator*(const BigFloat &a, double b);
  friend BigFloat operator*(double a, const BigFloat &b) { return b * a; }

  friend bool operator<(const BigFloat &a, const BigFloat &b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat &a, const BigFloat &b) { return b < a; }
  friend bool operator<=(const BigFloat &a, const BigFloat &b)
  {
    return mpfr_lessequal_p(a.v_, b.v_);
  }
  friend bool operator>=(const BigFloat &a, const BigFloat &b) { return b <= a; }

  friend BigFloat sqrt(const BigFloat &a);
  friend BigFloat abs(const BigFloat &a);

  mpfr_ptr Raw() { return v_; }
  mpfr_srcptr Raw() const { return v_; }

private:
  mpfr_t v_;
};

//
// Complex number over BigFloat, with just the arithmetic the root finder needs.
//
struct BigComplex
{
  BigFloat re;
  BigFloat im;

  explicit BigComplex(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
  BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
  BigComplex(std::complex<double> z, mpfr_prec_t prec) : re(z.real(), prec), im(z.imag(), prec) {}

  mpfr_prec_t Precision() const { return re.Precision(); }
  std::complex<double> ToDouble() const { return {re.ToDouble(), im.ToDouble()}; }

  BigComplex &operator+=(const BigComplex &o);
  BigComplex &operator-=(const BigComplex &o);

  friend BigComplex operator+(const BigComplex &a, const BigComplex &b);
  friend BigComplex operator-(const BigComplex &a, const BigComplex &b);
  friend BigComplex operator*(const BigComplex &a, const BigComplex &b);
  friend BigComplex operator/(const BigComplex &a, const BigComplex &b);
  friend BigComplex operator*(const BigComplex &a, const BigFloat &b);
};

// |z|^2
BigFloat norm(const BigComplex &z);

}  // namespace cavddm

#endif  // CAVDDM_BIGFLOAT_HPP
