// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "cavddm/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace cavddm
{

PolynomialW::PolynomialW(std::vector<mpq_class> coeffs) : c_(std::move(coeffs))
{
  for (auto &c : c_)
  {
    c.canonicalize();
  }
  Normalize();
}

PolynomialW::PolynomialW(std::initializer_list<long> coeffs)
{
  c_.reserve(coeffs.size());
  for (long c : coeffs)
  {
    c_.emplace_back(c);
  }
  Normalize();
}

PolynomialW PolynomialW::Constant(const mpq_class &c) { return PolynomialW({c}); }

PolynomialW PolynomialW::Monomial(const mpq_class &c, int power)
{
  std::vector<mpq_class> v(power + 1, 0);
  v[power] = c;
  return PolynomialW(std::move(v));
}

void PolynomialW::Normalize()
{
  while (!c_.empty() && c_.back() == 0)
  {
    c_.pop_back();
  }
}

mpq_class PolynomialW::Coefficient(int i) const
{
  return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : mpq_class(0);
}

PolynomialW PolynomialW::Derivative() const
{
  if (c_.size() <= 1)
  {
    return {};
  }
  std::vector<mpq_class> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); i++)
  {
    d[i - 1] = c_[i] * static_cast<long>(i);
  }
  return PolynomialW(std::move(d));
}

mpq_class PolynomialW::Evaluate(const mpq_class &w) const
{
  mpq_class r = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
  {
    r = r * w + *it;
  }
  return r;
}

double PolynomialW::Evaluate(double w) const
{
  double r = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
  {
    r = r * w + it->get_d();
  }
  return r;
}

BigFloat PolynomialW::Evaluate(const BigFloat &w) const
{
  BigFloat r(w.Precision());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
  {
    r *= w;
    r += BigFloat(*it, w.Precision());
  }
  return r;
}

BigComplex PolynomialW::Evaluate(const BigComplex &w) const
{
  const mpfr_prec_t prec = w.Precision();
  BigComplex r(prec);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
  {
    r = r * w;
    r.re += BigFloat(*it, prec);
  }
  return r;
}

BigFloat PolynomialW::AbsoluteScale(const BigFloat &abs_w) const
{
  BigFloat r(abs_w.Precision());
  for (auto it = c_.rbegin(); it != c_.rend(); ++it)
  {
    r *= abs_w;
    r += abs(BigFloat(*it, abs_w.Precision()));
  }
  return r;
}

PolynomialW &PolynomialW::operator+=(const PolynomialW &o)
{
  if (o.c_.size() > c_.size())
  {
    c_.resize(o.c_.size(), 0);
  }
  for (std::size_t i = 0; i < o.c_.size(); i++)
  {
    c_[i] += o.c_[i];
  }
  Normalize();
  return *this;
}

PolynomialW &PolynomialW::operator-=(const PolynomialW &o)
{
  if (o.c_.size() > c_.size())
  {
    c_.resize(o.c_.size(), 0);
  }
  for (std::size_t i = 0; i < o.c_.size(); i++)
  {
    c_[i] -= o.c_[i];
  }
  Normalize();
  return *this;
}

PolynomialW operator*(const PolynomialW &a, const PolynomialW &b)
{
  if (a.IsZero() || b.IsZero())
  {
    return {};
  }
  std::vector<mpq_class> r(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); i++)
  {
    for (std::size_t j = 0; j < b.c_.size(); j++)
    {
      r[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return PolynomialW(std::move(r));
}

PolynomialW operator*(const mpq_class &a, const PolynomialW &b)
{
  std::vector<mpq_class> r(b.c_);
  for (auto &c : r)
  {
    c *= a;
  }
  return PolynomialW(std::move(r));
}

std::string PolynomialW::ToString() const
{
  if (c_.empty())
  {
    return "0";
  }
  std::ostringstream os;
  for (std::size_t i = 0; i < c_.size(); i++)
  {
    if (c_[i] == 0)
    {
      continue;
    }
    if (os.tellp() > 0)
    {
      os << (c_[i] > 0 ? " + " : " - ");
      os << mpq_class(abs(c_[i])).get_str();
    }
    else
    {
      os << c_[i].get_str();
    }
    if (i == 1)
    {
      os << "*w";
    }
    else if (i > 1)
    {
      os << "*w^" << i;
    }
  }
  return os.str();
}

}  // namespace cavddm
