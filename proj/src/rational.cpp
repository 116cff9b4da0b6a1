// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "cavddm/rational.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include "cavddm/aberth.hpp"
#include "cavddm/error.hpp"
#include "cavddm/format.hpp"

namespace cavddm
{

namespace
{

constexpr int kMaxPrecisionBits = 16384;

const PolynomialW &MinusW()
{
  static const PolynomialW p{0, -1};
  return p;
}

}  // namespace

ContinuedFractionRule cot_rule()
{
  return {PolynomialW{1}, [](int) { return MinusW(); },
          [](int n) { return PolynomialW{2L * n + 1}; }};
}

ContinuedFractionRule tan_rule()
{
  return {PolynomialW{},
          [](int n) { return n == 1 ? PolynomialW{0, 1} : MinusW(); },
          [](int n) { return PolynomialW{2L * n - 1}; }};
}

std::pair<PolynomialW, PolynomialW> cfrac_rational(const ContinuedFractionRule &rule, int depth)
{
  if (depth < 2)
  {
    throw std::invalid_argument("cfrac_rational: depth must be at least 2");
  }
  // Seeds A_{-1} = 1, B_{-1} = 0, A_0 = b0, B_0 = 1.
  PolynomialW a_prev{1}, b_prev{};
  PolynomialW a_cur = rule.b0, b_cur{1};
  for (int n = 1; n <= depth; n++)
  {
    const PolynomialW an = rule.a(n), bn = rule.b(n);
    if (an.Degree() > 1 || bn.Degree() > 1)
    {
      throw std::invalid_argument("cfrac_rational: coefficient rules must be at most linear in w");
    }
    PolynomialW a_next = bn * a_cur + an * a_prev;
    PolynomialW b_next = bn * b_cur + an * b_prev;
    a_prev = std::move(a_cur);
    b_prev = std::move(b_cur);
    a_cur = std::move(a_next);
    b_cur = std::move(b_next);
  }
  return {std::move(a_cur), std::move(b_cur)};
}

std::pair<PolynomialW, PolynomialW> poly_long_division(const PolynomialW &numer,
                                                       const PolynomialW &denom)
{
  if (denom.Degree() < 1 || numer.Degree() < denom.Degree())
  {
    throw std::invalid_argument("poly_long_division: need deg(numer) >= deg(denom) >= 1");
  }
  std::vector<mpq_class> rem(numer.Coefficients());
  const int dd = denom.Degree();
  std::vector<mpq_class> quot(numer.Degree() - dd + 1, 0);
  for (int i = numer.Degree(); i >= dd; i--)
  {
    const mpq_class t = rem[i] / denom.Leading();
    quot[i - dd] = t;
    for (int j = 0; j <= dd; j++)
    {
      rem[i - dd + j] -= t * denom[j];
    }
  }
  rem.resize(dd);
  return {PolynomialW(std::move(quot)), PolynomialW(std::move(rem))};
}

std::vector<BigComplex> poly_roots_aberth(const PolynomialW &p, mpfr_prec_t precision_bits,
                                          double residual_target, int max_iterations)
{
  if (p.Degree() < 1)
  {
    throw std::invalid_argument("poly_roots_aberth: degree must be at least 1");
  }
  std::vector<BigComplex> c;
  c.reserve(p.Degree() + 1);
  for (const auto &ci : p.Coefficients())
  {
    c.emplace_back(BigFloat(ci, precision_bits), BigFloat(precision_bits));
  }
  AberthOptions opt;
  opt.tolerance = residual_target;
  opt.max_iterations = max_iterations;
  auto roots = aberth_roots(c, opt).roots;
  std::sort(roots.begin(), roots.end(), [](const BigComplex &x, const BigComplex &y)
            { return x.re < y.re || (!(y.re < x.re) && x.im < y.im); });
  return roots;
}

std::vector<BigFloat> residues(const PolynomialW &remainder, const PolynomialW &denom,
                               const std::vector<BigFloat> &poles)
{
  const PolynomialW d = denom.Derivative();
  std::vector<BigFloat> out;
  out.reserve(poles.size());
  for (const auto &pole : poles)
  {
    const BigFloat dv = d.Evaluate(pole);
    const BigFloat scale = d.AbsoluteScale(abs(pole));
    const BigFloat floor = scale * std::ldexp(4.0 * (d.Degree() + 1), -pole.Precision());
    if (abs(dv) <= floor)
    {
      throw DegeneratePole("residues: denominator derivative vanishes at a pole");
    }
    out.push_back(remainder.Evaluate(pole) / dv);
  }
  return out;
}

double PadeCoefficients::Evaluate(double w) const
{
  double r = c0;
  for (int i = 0; i < n_terms; i++)
  {
    r += a[i] / (w - b[i]);
  }
  return r;
}

namespace
{

PadeCoefficients PadeAtPrecision(int n, mpfr_prec_t prec)
{
  const auto [num, den] = cfrac_rational(cot_rule(), 2 * n);
  if (den.Degree() != n)
  {
    throw NumericalError("pade_cot_coefficients: denominator degree differs from N");
  }
  const auto [quot, rem] = poly_long_division(num, den);
  if (quot.Degree() > 0)
  {
    throw NumericalError("pade_cot_coefficients: non-constant quotient");
  }

  const auto roots = poly_roots_aberth(den, prec);
  std::vector<BigFloat> poles;
  poles.reserve(n);
  const BigFloat one(1.0, prec);
  for (const auto &r : roots)
  {
    const BigFloat mag = abs(r.re) > one ? abs(r.re) : one;
    if (!(abs(r.im) <= mag * 1.0e-20) || r.re.Sign() <= 0)
    {
      throw RootFindingFailed("pade_cot_coefficients: denominator root is not real positive");
    }
    poles.push_back(r.re);
  }
  for (int i = 1; i < n; i++)
  {
    if (!(poles[i - 1] < poles[i]))
    {
      throw DegeneratePole("pade_cot_coefficients: repeated denominator root");
    }
  }
  const auto res = residues(rem, den, poles);

  PadeCoefficients out;
  out.n_terms = n;
  out.c0 = quot.Coefficient(0).get_d();
  for (int i = 0; i < n; i++)
  {
    out.a.push_back(res[i].ToDouble());
    out.b.push_back(poles[i].ToDouble());
  }
  return out;
}

}  // namespace

PadeCoefficients pade_cot_coefficients(int n_terms, int precision_bits)
{
  if (n_terms < 1)
  {
    throw std::invalid_argument("pade_cot_coefficients: N must be at least 1");
  }
  mpfr_prec_t prec = precision_bits > 0 ? precision_bits : std::max(64, 8 * n_terms);
  for (;;)
  {
    try
    {
      return PadeAtPrecision(n_terms, prec);
    }
    catch (const PrecisionExhausted &)
    {
      if (2 * prec > kMaxPrecisionBits)
      {
        throw;
      }
      prec *= 2;
    }
  }
}

double MittagLefflerTerms::Evaluate(double w) const
{
  double sum = 0.0;
  for (double pole : poles_w)
  {
    const double den = w - pole;
    if (std::abs(den) <= 1.0e-14 * std::max(std::abs(w), std::abs(pole)))
    {
      throw PoleHit("Mittag-Leffler expansion evaluated on a pole");
    }
    sum += w / den;
  }
  return constant + prefactor * sum;
}

MittagLefflerTerms ml_cot_terms(int n_terms, double l, double k)
{
  if (n_terms < 0 || !(l > 0.0))
  {
    throw std::invalid_argument("ml_cot_terms: need N >= 0 and l > 0");
  }
  MittagLefflerTerms t;
  t.constant = 1.0 / l;
  t.prefactor = 2.0 / l;
  for (int n = 1; n <= n_terms; n++)
  {
    const double q = n * std::numbers::pi / l;
    t.poles_w.push_back(q * q);
    t.poles_s2.push_back(k * k - q * q);
  }
  return t;
}

MittagLefflerTerms ml_tan_terms(int n_terms, double l)
{
  if (n_terms < 0 || !(l > 0.0))
  {
    throw std::invalid_argument("ml_tan_terms: need N >= 0 and l > 0");
  }
  MittagLefflerTerms t;
  t.constant = 0.0;
  t.prefactor = -2.0 / l;
  for (int n = 0; n < n_terms; n++)
  {
    const double q = (n + 0.5) * std::numbers::pi / l;
    t.poles_w.push_back(q * q);
  }
  return t;
}

PadeCache &PadeCache::Global()
{
  static PadeCache cache;
  return cache;
}

std::shared_ptr<const PadeCoefficients> PadeCache::Get(int n_terms)
{
  std::promise<std::shared_ptr<const PadeCoefficients>> promise;
  {
    std::unique_lock<std::mutex> lock(mutex_);
    auto it = entries_.find(n_terms);
    if (it != entries_.end())
    {
      auto fut = it->second;
      lock.unlock();
      return fut.get();
    }
    entries_.emplace(n_terms, promise.get_future().share());
  }
  try
  {
    auto v = std::make_shared<const PadeCoefficients>(pade_cot_coefficients(n_terms));
    promise.set_value(v);
    return v;
  }
  catch (...)
  {
    promise.set_exception(std::current_exception());
    std::lock_guard<std::mutex> lock(mutex_);
    entries_.erase(n_terms);
    throw;
  }
}

void PadeCache::Insert(PadeCoefficients coeffs)
{
  std::promise<std::shared_ptr<const PadeCoefficients>> promise;
  const int n = coeffs.n_terms;
  promise.set_value(std::make_shared<const PadeCoefficients>(std::move(coeffs)));
  std::lock_guard<std::mutex> lock(mutex_);
  entries_[n] = promise.get_future().share();
}

bool PadeCache::Contains(int n_terms) const
{
  std::lock_guard<std::mutex> lock(mutex_);
  return entries_.count(n_terms) > 0;
}

void PadeCache::Clear()
{
  std::lock_guard<std::mutex> lock(mutex_);
  entries_.clear();
}

std::string format_pade_row(const PadeCoefficients &row)
{
  std::ostringstream os;
  os << row.n_terms << ' ' << format_real(row.c0);
  for (double v : row.a)
  {
    os << ' ' << format_real(v);
  }
  for (double v : row.b)
  {
    os << ' ' << format_real(v);
  }
  return os.str();
}

void write_pade_table(const std::string &path, const std::vector<PadeCoefficients> &rows)
{
  std::ofstream out(path);
  if (!out)
  {
    throw std::runtime_error("cannot open " + path + " for writing");
  }
  out << "# N c0 a_1..a_N b_1..b_N\n";
  for (const auto &r : rows)
  {
    out << format_pade_row(r) << '\n';
  }
}

std::vector<PadeCoefficients> read_pade_table(const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw std::runtime_error("cannot open " + path);
  }
  std::vector<PadeCoefficients> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line))
  {
    lineno++;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
    {
      continue;
    }
    std::istringstream is(line);
    PadeCoefficients r;
    if (!(is >> r.n_terms) || r.n_terms < 1)
    {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad term count");
    }
    r.a.resize(r.n_terms);
    r.b.resize(r.n_terms);
    bool ok = static_cast<bool>(is >> r.c0);
    for (auto &v : r.a)
    {
      ok = ok && static_cast<bool>(is >> v);
    }
    for (auto &v : r.b)
    {
      ok = ok && static_cast<bool>(is >> v);
    }
    if (!ok)
    {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": truncated record");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace cavddm
