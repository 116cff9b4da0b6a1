// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CAVDDM_RATIONAL_HPP
#define CAVDDM_RATIONAL_HPP

#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>
#include "cavddm/bigfloat.hpp"
#include "cavddm/polynomial.hpp"

namespace cavddm
{

//
// Continued fraction b0 + a1/(b1 + a2/(b2 + ...)) whose partial numerators and
// denominators are polynomials of degree at most one in w.
//
struct ContinuedFractionRule
{
  PolynomialW b0;
  std::function<PolynomialW(int)> a;
  std::function<PolynomialW(int)> b;
};

// z cot z = 1 - w/(3 - w/(5 - ...)).
ContinuedFractionRule cot_rule();

// z tan z = w/(1 - w/(3 - w/(5 - ...))).
ContinuedFractionRule tan_rule();

// Convergent A_m/B_m of depth m >= 2 via A_n = b_n A_{n-1} + a_n A_{n-2}.
std::pair<PolynomialW, PolynomialW> cfrac_rational(const ContinuedFractionRule &rule, int depth);

// numer = quotient * denom + remainder with deg(remainder) < deg(denom).
std::pair<PolynomialW, PolynomialW> poly_long_division(const PolynomialW &numer,
                                                       const PolynomialW &denom);

// All roots of p at the given working precision, sorted by real part. Throws
// PrecisionExhausted when rounding prevents reaching the correction target and
// RootFindingFailed when the iteration cap is hit.
std::vector<BigComplex> poly_roots_aberth(const PolynomialW &p, mpfr_prec_t precision_bits,
                                          double residual_target = 1.0e-30,
                                          int max_iterations = 1000);

// Residues remainder(pole)/denom'(pole) at simple real poles.
std::vector<BigFloat> residues(const PolynomialW &remainder, const PolynomialW &denom,
                               const std::vector<BigFloat> &poles);

//
// N-term decomposition z cot z ~ c0 + sum_i a_i / (w - b_i), w = z^2.
//
struct PadeCoefficients
{
  int n_terms = 0;
  double c0 = 0.0;
  std::vector<double> a;
  std::vector<double> b;  // ascending

  // Evaluates the rational at w.
  double Evaluate(double w) const;
};

// Uses precision_bits as the starting precision when positive, otherwise max(64, 8N);
// the precision doubles on PrecisionExhausted up to 16384 bits.
PadeCoefficients pade_cot_coefficients(int n_terms, int precision_bits = 0);

//
// Truncated partial-fraction expansion evaluated as
//   constant + prefactor * sum_n w / (w - poles_w[n]),  w = k^2 - s^2.
//
struct MittagLefflerTerms
{
  double constant = 0.0;
  double prefactor = 0.0;
  std::vector<double> poles_w;
  // The same poles as transverse wavenumbers squared, s^2 = k^2 - poles_w.
  std::vector<double> poles_s2;

  double Evaluate(double w) const;
};

// k cot(k l) expansion: constant 1/l, prefactor 2/l, poles (n pi / l)^2 for n = 1..N.
MittagLefflerTerms ml_cot_terms(int n_terms, double l, double k);

// k tan(k l) expansion: constant 0, prefactor -2/l, poles ((n + 1/2) pi / l)^2 for n = 0..N-1.
MittagLefflerTerms ml_tan_terms(int n_terms, double l);

//
// Thread-safe per-N memoization of the Pade coefficients. Concurrent requests for
// the same N wait on a single computation.
//
class PadeCache
{
public:
  static PadeCache &Global();

  std::shared_ptr<const PadeCoefficients> Get(int n_terms);
  void Insert(PadeCoefficients coeffs);
  bool Contains(int n_terms) const;
  void Clear();

private:
  mutable std::mutex mutex_;
  std::map<int, std::shared_future<std::shared_ptr<const PadeCoefficients>>> entries_;
};

// Plain-text table, one record per line: N c0 a_1..a_N b_1..b_N at 17 significant digits.
void write_pade_table(const std::string &path, const std::vector<PadeCoefficients> &rows);
std::vector<PadeCoefficients> read_pade_table(const std::string &path);
std::string format_pade_row(const PadeCoefficients &row);

}  // namespace cavddm

#endif  // CAVDDM_RATIONAL_HPP
