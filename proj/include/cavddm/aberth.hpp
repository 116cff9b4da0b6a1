// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CAVDDM_ABERTH_HPP
#define CAVDDM_ABERTH_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>
#include "cavddm/bigfloat.hpp"
#include "cavddm/error.hpp"

namespace cavddm
{

//
// Ehrlich-Aberth simultaneous root iteration, generic over the complex scalar so the
// same code runs in double precision (small characteristic polynomials) and in MPFR
// precision (Pade denominators with factorially growing coefficients).
//

template <typename C>
struct AberthScalar;

template <>
struct AberthScalar<std::complex<double>>
{
  using Complex = std::complex<double>;
  using Real = double;
  static Complex Make(std::complex<double> z, mpfr_prec_t) { return z; }
  static Real Make(double x, mpfr_prec_t) { return x; }
  static Real Norm(const Complex &z) { return std::norm(z); }
  static Real Sqrt(const Real &x) { return std::sqrt(x); }
  static double Log2Abs(const Complex &z) { return std::log2(std::abs(z)); }
  static mpfr_prec_t Precision(const Complex &) { return 53; }
};

template <>
struct AberthScalar<BigComplex>
{
  using Complex = BigComplex;
  using Real = BigFloat;
  static Complex Make(std::complex<double> z, mpfr_prec_t prec) { return {z, prec}; }
  static Real Make(double x, mpfr_prec_t prec) { return {x, prec}; }
  static Real Norm(const Complex &z) { return norm(z); }
  static Real Sqrt(const Real &x) { return sqrt(x); }
  static double Log2Abs(const Complex &z) { return 0.5 * norm(z).Log2Abs(); }
  static mpfr_prec_t Precision(const Complex &z) { return z.Precision(); }
};

struct AberthOptions
{
  // Newton correction target, relative to max(1, |z|).
  double tolerance = 1.0e-30;
  int max_iterations = 1000;
  std::uint64_t seed = 0x5eed5eedULL;
  // Consecutive iterations at the rounding floor before precision is declared exhausted.
  int floor_patience = 8;
};

template <typename C>
struct AberthResult
{
  std::vector<C> roots;
  int iterations = 0;
};

namespace detail
{

// Upper convex hull of (i, log2|c_i|); each hull edge of width m yields m starting
// points on a circle whose radius matches the geometric mean root magnitude of that edge.
inline std::vector<std::complex<double>> NewtonPolygonStart(const std::vector<double> &log2c,
                                                            std::uint64_t seed)
{
  const int n = static_cast<int>(log2c.size()) - 1;
  std::vector<int> hull;
  for (int i = 0; i <= n; i++)
  {
    if (!std::isfinite(log2c[i]))
    {
      continue;
    }
    while (hull.size() >= 2)
    {
      const int a = hull[hull.size() - 2], b = hull.back();
      const double cross = (b - a) * (log2c[i] - log2c[a]) - (i - a) * (log2c[b] - log2c[a]);
      if (cross >= 0.0)
      {
        hull.pop_back();
      }
      else
      {
        break;
      }
    }
    hull.push_back(i);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<std::complex<double>> z;
  z.reserve(n);
  if (hull.front() > 0)
  {
    // Zero roots from vanishing low-order coefficients.
    for (int j = 0; j < hull.front(); j++)
    {
      z.emplace_back(0.0, 0.0);
    }
  }
  for (std::size_t e = 0; e + 1 < hull.size(); e++)
  {
    const int a = hull[e], b = hull[e + 1], m = b - a;
    const double log2r = (log2c[a] - log2c[b]) / m;
    // Radii outside the double range are clamped; the iteration pulls them back in.
    const double r = std::exp2(std::clamp(log2r, -1000.0, 1000.0));
    const double sigma = phase(rng);
    for (int j = 0; j < m; j++)
    {
      const double theta = 2.0 * std::numbers::pi * j / m + sigma / m + 0.7;
      z.push_back(std::polar(r, theta));
    }
  }
  return z;
}

template <typename C>
C Horner(const std::vector<C> &c, const C &z, C &dp)
{
  C p = c.back();
  dp = AberthScalar<C>::Make(std::complex<double>(0.0, 0.0), AberthScalar<C>::Precision(z));
  for (int i = static_cast<int>(c.size()) - 2; i >= 0; i--)
  {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return p;
}

template <typename C>
typename AberthScalar<C>::Real AbsHorner(const std::vector<typename AberthScalar<C>::Real> &absc,
                                         const typename AberthScalar<C>::Real &absz)
{
  auto r = absc.back();
  for (int i = static_cast<int>(absc.size()) - 2; i >= 0; i--)
  {
    r = r * absz + absc[i];
  }
  return r;
}

struct RootStatus
{
  bool converged = false;
  bool at_floor = false;
};

// One Aberth correction for root i, computed from the previous iterate only (Jacobi
// ordering) so that the parallel and serial sweeps produce identical results.
template <typename C>
RootStatus AberthUpdate(const std::vector<C> &c, const std::vector<typename AberthScalar<C>::Real> &absc,
                        const std::vector<C> &z, int i, double tol, C &out)
{
  using S = AberthScalar<C>;
  const mpfr_prec_t prec = S::Precision(z[i]);
  C dp = S::Make(std::complex<double>(0.0, 0.0), prec);
  const C p = Horner(c, z[i], dp);
  RootStatus st;
  const auto one = S::Make(1.0, prec);
  const auto zabs2 = S::Norm(z[i]);
  const auto scale2 = zabs2 > one ? zabs2 : one;
  const auto tol2 = scale2 * (tol * tol);
  if (S::Norm(p) <= S::Make(0.0, prec))
  {
    out = z[i];
    st.converged = true;
    return st;
  }
  const auto dp2 = S::Norm(dp);
  if (dp2 <= S::Make(0.0, prec))
  {
    // Stationary point: nudge off it.
    out = z[i] + S::Make(std::complex<double>(1.0e-3, 1.0e-3), prec) * one;
    return st;
  }
  const C newton = p / dp;
  C sum = S::Make(std::complex<double>(0.0, 0.0), prec);
  const C unit = S::Make(std::complex<double>(1.0, 0.0), prec);
  for (int j = 0; j < static_cast<int>(z.size()); j++)
  {
    if (j != i)
    {
      sum = sum + unit / (z[i] - z[j]);
    }
  }
  const C w = newton / (unit - newton * sum);
  out = z[i] - w;
  st.converged = S::Norm(w) <= tol2;

  // Rounding floor: the evaluation error of p is about 2^-prec * sum |c_i| |z|^i.
  const auto floor = AbsHorner<C>(absc, S::Sqrt(zabs2)) * std::ldexp(4.0 * c.size(), -prec);
  st.at_floor = floor * floor >= tol2 * dp2;
  return st;
}

template <typename C>
AberthResult<C> AberthRun(const std::vector<C> &coeffs, const std::vector<double> &log2c,
                          const AberthOptions &opt, bool parallel)
{
  using S = AberthScalar<C>;
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1)
  {
    throw std::invalid_argument("aberth: polynomial degree must be at least 1");
  }
  const mpfr_prec_t prec = S::Precision(coeffs.back());
  AberthResult<C> res;
  if (n == 1)
  {
    res.roots.push_back(S::Make(std::complex<double>(0.0, 0.0), prec) - coeffs[0] / coeffs[1]);
    return res;
  }
  std::vector<typename S::Real> absc;
  absc.reserve(coeffs.size());
  for (const auto &ci : coeffs)
  {
    absc.push_back(S::Sqrt(S::Norm(ci)));
  }
  std::vector<C> z;
  for (const auto &z0 : NewtonPolygonStart(log2c, opt.seed))
  {
    z.push_back(S::Make(z0, prec));
  }
  std::vector<C> znew = z;
  std::vector<char> done(n, 0);
  std::vector<RootStatus> status(n);
  int floor_streak = 0;
  for (int it = 1; it <= opt.max_iterations; it++)
  {
    if (parallel)
    {
#pragma omp parallel for schedule(dynamic)
      for (int i = 0; i < n; i++)
      {
        if (!done[i])
        {
          status[i] = AberthUpdate(coeffs, absc, z, i, opt.tolerance, znew[i]);
        }
      }
    }
    else
    {
      for (int i = 0; i < n; i++)
      {
        if (!done[i])
        {
          status[i] = AberthUpdate(coeffs, absc, z, i, opt.tolerance, znew[i]);
        }
      }
    }
    bool all_done = true, all_floor = true;
    for (int i = 0; i < n; i++)
    {
      if (done[i])
      {
        continue;
      }
      z[i] = znew[i];
      if (status[i].converged)
      {
        done[i] = 1;
      }
      else
      {
        all_done = false;
        all_floor = all_floor && status[i].at_floor;
      }
    }
    res.iterations = it;
    if (all_done)
    {
      res.roots = std::move(z);
      return res;
    }
    floor_streak = all_floor ? floor_streak + 1 : 0;
    if (floor_streak >= opt.floor_patience)
    {
      throw PrecisionExhausted("aberth: rounding floor above the correction target at " +
                               std::to_string(prec) + " bits");
    }
  }
  throw RootFindingFailed("aberth: no convergence after " + std::to_string(opt.max_iterations) +
                          " iterations");
}

}  // namespace detail

// Roots of sum_i c_i x^i (ascending coefficients, nonzero leading term). The OpenMP
// variant distributes the per-root corrections; aberth_roots_serial is the reference.
template <typename C>
AberthResult<C> aberth_roots(const std::vector<C> &coeffs, const AberthOptions &opt = {})
{
  std::vector<double> log2c;
  for (const auto &c : coeffs)
  {
    log2c.push_back(AberthScalar<C>::Log2Abs(c));
  }
  return detail::AberthRun(coeffs, log2c, opt, true);
}

template <typename C>
AberthResult<C> aberth_roots_serial(const std::vector<C> &coeffs, const AberthOptions &opt = {})
{
  std::vector<double> log2c;
  for (const auto &c : coeffs)
  {
    log2c.push_back(AberthScalar<C>::Log2Abs(c));
  }
  return detail::AberthRun(coeffs, log2c, opt, false);
}

}  // namespace cavddm

#endif  // CAVDDM_ABERTH_HPP
