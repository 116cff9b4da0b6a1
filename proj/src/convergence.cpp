// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "cavddm/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include "cavddm/error.hpp"

namespace cavddm
{

namespace
{

constexpr double kIllPosedTol = 1.0e-14;

// lambda minus the exact cavity symbol at length l, evaluated without cancellation on
// the evanescent branch where both are close to sqrt(s^2 - k^2).
std::complex<double> Mismatch(SymbolValue lambda, double s, double k, double l, Branch br)
{
  if (br == Branch::Evanescent)
  {
    return (lambda - dtn_unbounded(s, k)) - symbol_gap(s, k, l);
  }
  return lambda - dtn_cavity_dirichlet(s, k, l);
}

std::complex<double> Denominator(SymbolValue lambda, double s, double k, double l)
{
  const SymbolValue dtn = dtn_cavity_dirichlet(s, k, l);
  const std::complex<double> d = lambda + dtn;
  if (std::abs(d) < kIllPosedTol * (std::abs(lambda) + std::abs(dtn)))
  {
    throw IllPosed("convergence radius denominator vanishes");
  }
  return d;
}

// sin(a l') / sin(a l) and its evanescent / grazing analogs.
double Damping(double s, double k, double l, double l_prime, Branch br)
{
  switch (br)
  {
    case Branch::Propagating:
    {
      const double kap = std::sqrt(k * k - s * s);
      const double den = std::sin(kap * l);
      if (std::abs(den) < 1.0e-12)
      {
        throw IllPosed("overlap damping factor on a pole");
      }
      return std::sin(kap * l_prime) / den;
    }
    case Branch::Grazing:
      return l_prime / l;
    case Branch::Evanescent:
    {
      const double beta = std::sqrt(s * s - k * k);
      return std::exp(-beta * (l - l_prime)) * std::expm1(-2.0 * beta * l_prime) /
             std::expm1(-2.0 * beta * l);
    }
  }
  return 1.0;
}

RadiusResult Radius(SymbolValue lambda01, SymbolValue lambda10, double s, double k, double l01,
                    double l10, double l01p, double l10p, bool overlap)
{
  if (!(l01 > 0.0 && l10 > 0.0 && l01p > 0.0 && l10p > 0.0))
  {
    throw std::invalid_argument("radius: lengths must be positive");
  }
  RadiusResult r;
  r.branch = classify_branch(s, k);
  r.n01 = Mismatch(lambda01, s, k, l10p, r.branch);
  r.n10 = Mismatch(lambda10, s, k, l01p, r.branch);
  if (overlap)
  {
    r.n01 *= Damping(s, k, l10, l10p, r.branch);
    r.n10 *= Damping(s, k, l01, l01p, r.branch);
  }
  r.d01 = Denominator(lambda01, s, k, l01);
  r.d10 = Denominator(lambda10, s, k, l10);
  r.rho_squared = (r.n01 / r.d01) * (r.n10 / r.d10);
  r.rho_abs = std::sqrt(std::abs(r.rho_squared));
  return r;
}

}  // namespace

RadiusResult radius_nonoverlap(SymbolValue lambda01, SymbolValue lambda10, double s, double k,
                               double l01, double l10)
{
  return Radius(lambda01, lambda10, s, k, l01, l10, l01, l10, false);
}

RadiusResult radius_overlap(SymbolValue lambda01, SymbolValue lambda10, double s, double k,
                            double l01, double l10, double l01_prime, double l10_prime)
{
  if (l01_prime > l01 || l10_prime > l10)
  {
    throw std::invalid_argument("radius_overlap: reduced lengths exceed extended lengths");
  }
  return Radius(lambda01, lambda10, s, k, l01, l10, l01_prime, l10_prime, true);
}

RadiusResult radius_for_spec(const OperatorSpec &spec, double s, double k, double l01, double l10)
{
  auto r = radius_nonoverlap(apply_spec(spec, s, k, l10), apply_spec(spec, s, k, l01), s, k, l01,
                             l10);
  if (is_exact_cavity_dtn(spec))
  {
    clear_mismatch(r);
  }
  return r;
}

bool is_exact_cavity_dtn(const OperatorSpec &spec)
{
  return spec.kind == OperatorKind::DtnCavity && spec.chi == 0.0 && !spec.mixing;
}

void clear_mismatch(RadiusResult &r)
{
  r.n01 = r.n10 = 0.0;
  r.rho_squared = 0.0;
  r.rho_abs = 0.0;
}

double max_over_modes(const std::vector<RadiusResult> &rows)
{
  double m = 0.0;
  for (const auto &r : rows)
  {
    m = std::max(m, r.rho_abs);
  }
  return m;
}

std::complex<double> symbol_gap(double s, double k, double l)
{
  if (classify_branch(s, k) == Branch::Evanescent)
  {
    const double beta = std::sqrt(s * s - k * k);
    return 2.0 * beta * std::exp(-2.0 * l * beta) / -std::expm1(-2.0 * l * beta);
  }
  return dtn_cavity_dirichlet(s, k, l) - dtn_unbounded(s, k);
}

int n_min_pole(double l, double wavelength)
{
  if (!(l > 0.0 && wavelength > 0.0))
  {
    throw std::invalid_argument("n_min_pole: lengths must be positive");
  }
  const double x = 2.0 * l / wavelength;
  // Absorb rounding so exact multiples do not round up.
  return static_cast<int>(std::ceil(x * (1.0 - 4.0e-16)));
}

}  // namespace cavddm
