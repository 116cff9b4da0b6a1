// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "cavddm/symbols.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <vector>
#include "cavddm/error.hpp"
#include "cavddm/format.hpp"

namespace cavddm
{

namespace
{

constexpr double kPoleTol = 1.0e-12;
constexpr double kBranchTol = 1.0e-14;
constexpr std::complex<double> kJ(0.0, 1.0);

struct KindName
{
  OperatorKind kind;
  const char *name;
  bool has_terms;
};

constexpr KindName kKinds[] = {
    {OperatorKind::DtnCavity, "dtn-c", false},
    {OperatorKind::DtnCavityNeumann, "dtn-c-neumann", false},
    {OperatorKind::DtnUnbounded, "dtn-u", false},
    {OperatorKind::Oo0Cavity, "oo0-c", false},
    {OperatorKind::Oo0Unbounded, "oo0-u", false},
    {OperatorKind::MittagLefflerCavity, "ml-c", true},
    {OperatorKind::PadeCavity, "pade-c", true},
    {OperatorKind::PadeUnbounded, "pade-u", true},
};

const KindName &Lookup(OperatorKind kind)
{
  for (const auto &k : kKinds)
  {
    if (k.kind == kind)
    {
      return k;
    }
  }
  throw std::invalid_argument("unknown operator kind");
}

double ParseReal(const std::string &text, const std::string &what)
{
  std::size_t pos = 0;
  double v = 0.0;
  try
  {
    v = std::stod(text, &pos);
  }
  catch (const std::exception &)
  {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || !std::isfinite(v))
  {
    throw std::invalid_argument("operator spec: bad " + what + " '" + text + "'");
  }
  return v;
}

int ParseInt(const std::string &text, const std::string &what)
{
  std::size_t pos = 0;
  long v = 0;
  try
  {
    v = std::stol(text, &pos);
  }
  catch (const std::exception &)
  {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || v < 0 || v > 1000000)
  {
    throw std::invalid_argument("operator spec: bad " + what + " '" + text + "'");
  }
  return static_cast<int>(v);
}

std::vector<std::string> Split(const std::string &s, char sep)
{
  std::vector<std::string> out(1);
  for (char c : s)
  {
    if (c == sep)
    {
      out.emplace_back();
    }
    else
    {
      out.back() += c;
    }
  }
  return out;
}

// Splits on '+' that introduces a suffix, leaving exponent signs such as 1e+3 intact.
std::vector<std::string> SplitSuffixes(const std::string &s)
{
  std::vector<std::string> out(1);
  for (std::size_t i = 0; i < s.size(); i++)
  {
    if (s[i] == '+' && i + 1 < s.size() && std::isalpha(static_cast<unsigned char>(s[i + 1])))
    {
      out.emplace_back();
    }
    else
    {
      out.back() += s[i];
    }
  }
  return out;
}

// Hyperbolic ratios written in exp(-2x) so large arguments never overflow.
double CothScaled(double x)
{
  const double e = std::exp(-2.0 * x);
  return (1.0 + e) / -std::expm1(-2.0 * x);
}

double TanhScaled(double x)
{
  const double e = std::exp(-2.0 * x);
  return -std::expm1(-2.0 * x) / (1.0 + e);
}

}  // namespace

void OperatorSpec::Validate() const
{
  const auto &kn = Lookup(kind);
  if (!kn.has_terms && n_terms != 0)
  {
    throw std::invalid_argument(std::string("operator spec: ") + kn.name + " takes no term count");
  }
  if ((kind == OperatorKind::PadeCavity || kind == OperatorKind::PadeUnbounded) && n_terms < 1)
  {
    throw std::invalid_argument(std::string("operator spec: ") + kn.name + " needs N >= 1");
  }
  if (n_terms < 0)
  {
    throw std::invalid_argument("operator spec: negative term count");
  }
  if (!(chi >= 0.0) || !std::isfinite(chi))
  {
    throw std::invalid_argument("operator spec: regularization must be finite and >= 0");
  }
  if (mixing)
  {
    if (kind != OperatorKind::Oo0Cavity && kind != OperatorKind::MittagLefflerCavity &&
        kind != OperatorKind::PadeCavity)
    {
      throw std::invalid_argument("operator spec: mixing only applies to oo0-c, ml-c and pade-c");
    }
    if (!(mixing->epsilon > 0.0 && mixing->epsilon < 1.0))
    {
      throw std::invalid_argument("operator spec: mixing weight must lie in (0, 1)");
    }
    if (mixing->m_terms < 1)
    {
      throw std::invalid_argument("operator spec: mixing needs M >= 1");
    }
  }
  if (!(branch_rotation >= 0.0 && branch_rotation <= std::numbers::pi / 2.0))
  {
    throw std::invalid_argument("operator spec: rotation must lie in [0, pi/2]");
  }
}

std::string OperatorSpec::ToString() const
{
  const auto &kn = Lookup(kind);
  std::string s = kn.name;
  if (kn.has_terms)
  {
    s += ":" + std::to_string(n_terms);
  }
  if (chi != 0.0)
  {
    s += "+r:" + format_short(chi);
  }
  if (mixing)
  {
    s += "+m:" + format_short(mixing->epsilon) + ":" + std::to_string(mixing->m_terms);
  }
  if (branch_rotation != kDefaultRotation)
  {
    s += "+rot:" + format_short(branch_rotation);
  }
  return s;
}

OperatorSpec parse_operator_spec(const std::string &text)
{
  const auto parts = SplitSuffixes(text);
  OperatorSpec spec;
  const auto head = Split(parts[0], ':');
  const KindName *kn = nullptr;
  for (const auto &k : kKinds)
  {
    if (head[0] == k.name)
    {
      kn = &k;
    }
  }
  if (!kn)
  {
    throw std::invalid_argument("operator spec: unknown kind '" + head[0] + "'");
  }
  spec.kind = kn->kind;
  if (kn->has_terms)
  {
    if (head.size() != 2)
    {
      throw std::invalid_argument("operator spec: " + head[0] + " needs ':N'");
    }
    spec.n_terms = ParseInt(head[1], "term count");
  }
  else if (head.size() != 1)
  {
    throw std::invalid_argument("operator spec: " + head[0] + " takes no term count");
  }
  bool seen_r = false, seen_rot = false;
  for (std::size_t i = 1; i < parts.size(); i++)
  {
    const auto f = Split(parts[i], ':');
    if (f[0] == "r" && f.size() == 2 && !seen_r)
    {
      spec.chi = ParseReal(f[1], "regularization");
      seen_r = true;
    }
    else if (f[0] == "m" && f.size() == 3 && !spec.mixing)
    {
      spec.mixing = Mixing{ParseReal(f[1], "mixing weight"), ParseInt(f[2], "mixing terms")};
    }
    else if (f[0] == "rot" && f.size() == 2 && !seen_rot)
    {
      spec.branch_rotation = ParseReal(f[1], "rotation");
      seen_rot = true;
    }
    else
    {
      throw std::invalid_argument("operator spec: bad suffix '+" + parts[i] + "'");
    }
  }
  spec.Validate();
  return spec;
}

Branch classify_branch(double s, double k)
{
  const double d = s * s - k * k;
  if (std::abs(d) <= kBranchTol * k * k)
  {
    return Branch::Grazing;
  }
  return d < 0.0 ? Branch::Propagating : Branch::Evanescent;
}

const char *branch_name(Branch b)
{
  switch (b)
  {
    case Branch::Propagating:
      return "propagating";
    case Branch::Grazing:
      return "grazing";
    case Branch::Evanescent:
      return "evanescent";
  }
  return "";
}

std::complex<double> alpha(double s, double k)
{
  switch (classify_branch(s, k))
  {
    case Branch::Propagating:
      return {0.0, -std::sqrt(k * k - s * s)};
    case Branch::Grazing:
      return 0.0;
    case Branch::Evanescent:
      return std::sqrt(s * s - k * k);
  }
  return 0.0;
}

SymbolValue dtn_cavity_dirichlet(double s, double k, double l)
{
  if (!(l > 0.0))
  {
    throw std::invalid_argument("dtn_cavity_dirichlet: length must be positive");
  }
  switch (classify_branch(s, k))
  {
    case Branch::Propagating:
    {
      const double kap = std::sqrt(k * k - s * s);
      const double sn = std::sin(kap * l);
      if (std::abs(sn) < kPoleTol)
      {
        throw PoleHit("cavity symbol on a cotangent pole");
      }
      return kap * std::cos(kap * l) / sn;
    }
    case Branch::Grazing:
      return 1.0 / l;
    case Branch::Evanescent:
    {
      const double beta = std::sqrt(s * s - k * k);
      return beta * CothScaled(beta * l);
    }
  }
  return 0.0;
}

SymbolValue dtn_cavity_neumann(double s, double k, double l)
{
  if (!(l > 0.0))
  {
    throw std::invalid_argument("dtn_cavity_neumann: length must be positive");
  }
  switch (classify_branch(s, k))
  {
    case Branch::Propagating:
    {
      const double kap = std::sqrt(k * k - s * s);
      const double cs = std::cos(kap * l);
      if (std::abs(cs) < kPoleTol)
      {
        throw PoleHit("hard-wall cavity symbol on a tangent pole");
      }
      return -kap * std::sin(kap * l) / cs;
    }
    case Branch::Grazing:
      return 0.0;
    case Branch::Evanescent:
    {
      const double beta = std::sqrt(s * s - k * k);
      return beta * TanhScaled(beta * l);
    }
  }
  return 0.0;
}

SymbolValue dtn_cavity_overlap(double s, double k, double l_prime)
{
  return dtn_cavity_dirichlet(s, k, l_prime);
}

SymbolValue dtn_unbounded(double s, double k)
{
  if (!(k > 0.0))
  {
    throw std::invalid_argument("dtn_unbounded: k must be positive");
  }
  return alpha(s, k);
}

SymbolValue oo0_cavity(double k, double l)
{
  if (!(l > 0.0))
  {
    throw std::invalid_argument("oo0_cavity: length must be positive");
  }
  const double sn = std::sin(k * l);
  if (std::abs(sn) < kPoleTol)
  {
    throw PoleHit("oo0 cavity symbol on a cotangent pole");
  }
  return k * std::cos(k * l) / sn;
}

SymbolValue ml_symbol(double s, double k, double l, int n_terms)
{
  return ml_cot_terms(n_terms, l, k).Evaluate(k * k - s * s);
}

SymbolValue pade_cavity_symbol(double s, double k, double l, const PadeCoefficients &coeffs)
{
  const double w = l * l * (k * k - s * s);
  double r = coeffs.c0;
  for (int i = 0; i < coeffs.n_terms; i++)
  {
    const double den = w - coeffs.b[i];
    if (std::abs(den) <= 1.0e-14 * std::max(std::abs(w), coeffs.b[i]))
    {
      throw PoleHit("Pade cavity symbol on a pole");
    }
    r += coeffs.a[i] / den;
  }
  return r / l;
}

SymbolValue pade_unbounded_symbol(double s, double k, int n_terms, double rotation)
{
  if (n_terms < 1)
  {
    throw std::invalid_argument("pade_unbounded_symbol: N must be at least 1");
  }
  const double x = -(s * s) / (k * k);
  const std::complex<double> z = (1.0 + x) * std::exp(-kJ * rotation) - 1.0;
  const double den = 2.0 * n_terms + 1.0;
  std::complex<double> r = 1.0;
  for (int j = 1; j <= n_terms; j++)
  {
    const double sj = std::sin(j * std::numbers::pi / den);
    const double cj = std::cos(j * std::numbers::pi / den);
    r += (2.0 / den) * sj * sj * z / (1.0 + cj * cj * z);
  }
  return -kJ * k * std::exp(kJ * (rotation / 2.0)) * r;
}

namespace
{

SymbolValue BaseSymbol(const OperatorSpec &spec, double s, double k, double l)
{
  switch (spec.kind)
  {
    case OperatorKind::DtnCavity:
      return dtn_cavity_dirichlet(s, k, l);
    case OperatorKind::DtnCavityNeumann:
      return dtn_cavity_neumann(s, k, l);
    case OperatorKind::DtnUnbounded:
      return dtn_unbounded(s, k);
    case OperatorKind::Oo0Cavity:
      return oo0_cavity(k, l);
    case OperatorKind::Oo0Unbounded:
      return {0.0, -k};
    case OperatorKind::MittagLefflerCavity:
      return ml_symbol(s, k, l, spec.n_terms);
    case OperatorKind::PadeCavity:
      return pade_cavity_symbol(s, k, l, *PadeCache::Global().Get(spec.n_terms));
    case OperatorKind::PadeUnbounded:
      return pade_unbounded_symbol(s, k, spec.n_terms, spec.branch_rotation);
  }
  return 0.0;
}

}  // namespace

SymbolValue apply_spec(const OperatorSpec &spec, double s, double k, double l)
{
  SymbolValue v = BaseSymbol(spec, s, k, l);
  if (spec.chi != 0.0)
  {
    v += kJ * (spec.chi * k);
  }
  if (spec.mixing)
  {
    const double eps = spec.mixing->epsilon;
    v = eps * v + (1.0 - eps) * pade_unbounded_symbol(s, k, spec.mixing->m_terms,
                                                        spec.branch_rotation);
  }
  return v;
}

}  // namespace cavddm
