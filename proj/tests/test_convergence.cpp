// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>
#include "cavddm/convergence.hpp"
#include "cavddm/error.hpp"
#include "oracles.hpp"

using namespace cavddm;
using std::numbers::pi;

TEST_CASE("exact DtN gives a zero radius")
{
  const double k = 2.0 * pi * 3.3, l01 = 0.45, l10 = 0.55;
  const auto spec = parse_operator_spec("dtn-c");
  for (int m = 1; m <= 40; m++)
  {
    const double s = m * pi / 0.5;
    CHECK(radius_for_spec(spec, s, k, l01, l10).rho_abs == 0.0);
  }
}

TEST_CASE("unbounded DtN closed form on both branches")
{
  const double k = 10.0, l01 = 0.6, l10 = 0.4;
  const auto spec = parse_operator_spec("dtn-u");
  for (int i = 1; i <= 20; i++)
  {
    const double s = k + 0.7 * i;
    const auto r = radius_for_spec(spec, s, k, l01, l10);
    const double expect = std::exp(-(l01 + l10) * std::sqrt(s * s - k * k));
    CHECK(std::abs(r.rho_abs - expect) <= 1e-12 * std::max(expect, 1e-300) + 1e-300);
  }
  for (int i = 0; i < 20; i++)
  {
    const double s = 0.49 * i;
    CHECK(std::abs(radius_for_spec(spec, s, k, l01, l10).rho_abs - 1.0) <= 1e-12);
  }
}

TEST_CASE("zeroth-order unbounded operator has unit radius below k")
{
  const double k = 7.0;
  const auto spec = parse_operator_spec("oo0-u");
  for (double s = 0.0; s <= k; s += 0.25)
  {
    CHECK(std::abs(radius_for_spec(spec, s, k, 0.5, 0.5).rho_abs - 1.0) <= 1e-12);
  }
}

TEST_CASE("radius result fields are consistent")
{
  const double k = 9.0;
  const auto spec = parse_operator_spec("pade-c:8");
  for (double s : {1.0, 5.0, 9.5, 30.0})
  {
    const auto r = radius_for_spec(spec, s, k, 0.3, 0.7);
    CHECK(std::abs(r.rho_abs - std::sqrt(std::abs(r.rho_squared))) <= 1e-15 * r.rho_abs);
    const double prod = std::abs(r.n01) * std::abs(r.n10) / (std::abs(r.d01) * std::abs(r.d10));
    CHECK(std::abs(r.rho_abs * r.rho_abs - prod) <= 1e-13 * prod);
  }
}

TEST_CASE("vanishing denominator is ill-posed")
{
  // lambda01 = -dtn(l01) makes d01 vanish.
  const double s = 1.0, k = 2.0, l = 0.5;
  const auto dtn = dtn_cavity_dirichlet(s, k, l);
  CHECK_THROWS_AS(radius_nonoverlap(-dtn, 0.0, s, k, l, l), IllPosed);
}

TEST_CASE("overlap radius")
{
  const double k = 12.0, l = 0.5;
  const auto lam = dtn_unbounded(3.0, k);
  for (double s : {3.0, 12.0, 20.0})
  {
    const auto l01 = apply_spec(parse_operator_spec("oo0-c"), s, k, l);
    const auto a = radius_nonoverlap(l01, l01, s, k, l, l);
    const auto b = radius_overlap(l01, l01, s, k, l, l, l, l);
    CHECK(std::abs(a.rho_abs - b.rho_abs) <= 1e-14 * a.rho_abs);
  }
  {
    const double s = 1.0, lp = 0.4;
    const auto r = radius_overlap(dtn_cavity_overlap(s, k, lp), dtn_cavity_overlap(s, k, lp), s, k,
                                  l, l, lp, lp);
    CHECK(r.rho_abs == 0.0);
  }
  {
    // With the unbounded DtN the wall reflection fixes the radius at exp(-beta (l01' + l10))
    // whatever the overlap width; cavity operators are damped by it.
    const double s = 20.0, beta = 16.0;
    const auto u = dtn_unbounded(s, k);
    const auto r0 = radius_nonoverlap(u, u, s, k, l, l);
    const auto r1 = radius_overlap(u, u, s, k, l + 0.02, l + 0.02, l - 0.02, l - 0.02);
    CHECK(r0.rho_abs == doctest::Approx(std::exp(-2.0 * l * beta)).epsilon(1e-13));
    CHECK(r1.rho_abs == doctest::Approx(r0.rho_abs).epsilon(1e-13));
    // First evanescent mode of the default cavity, away from the poles of k cot(k l).
    const double kc = 157.085, sc = 52.0 * pi;
    const auto spec = parse_operator_spec("oo0-c");
    const auto c0 = apply_spec(spec, sc, kc, l);
    const auto c1 = apply_spec(spec, sc, kc, l - 0.02);
    CHECK(radius_overlap(c1, c1, sc, kc, l + 0.02, l + 0.02, l - 0.02, l - 0.02).rho_abs <
          radius_nonoverlap(c0, c0, sc, kc, l, l).rho_abs);
  }
  CHECK_THROWS_AS(radius_overlap(lam, lam, 3.0, k, l, l, l + 0.1, l), std::invalid_argument);
}

TEST_CASE("overlap radius tends to the non-overlap value")
{
  const double k = 12.0, ell = 1.0, s = 7.0;
  const auto spec = parse_operator_spec("oo0-c");
  const auto base = radius_for_spec(spec, s, k, 0.5, 0.5).rho_abs;
  double prev = INFINITY;
  for (double f : {1e-2, 1e-4, 1e-6})
  {
    const double d = f * ell;
    const auto lam = apply_spec(spec, s, k, 0.5 - d);
    const auto r = radius_overlap(lam, lam, s, k, 0.5 + d, 0.5 + d, 0.5 - d, 0.5 - d);
    const double gap = std::abs(r.rho_abs - base);
    CHECK(gap < prev);
    prev = gap;
  }
}

namespace
{

double MaxPropagatingRadius(const std::string &text, double k, double h, double l01, double l10)
{
  std::vector<RadiusResult> rs;
  for (int m = 1; m * pi / h < k; m++)
  {
    rs.push_back(radius_for_spec(parse_operator_spec(text), m * pi / h, k, l01, l10));
  }
  return max_over_modes(rs);
}

}  // namespace

TEST_CASE("Mittag-Leffler radius improves on oo0-c once enough terms are kept")
{
  const double h = 0.5;
  struct Case
  {
    double ratio, l01, l10;
  };
  for (const Case c : {Case{6.3, 0.5, 0.5}, Case{6.3, 0.25, 0.75}, Case{25.00107, 0.5, 0.5}})
  {
    CAPTURE(c.ratio);
    CAPTURE(c.l01);
    const double k = 2.0 * pi * c.ratio;
    const int n = n_min_pole(std::max(c.l01, c.l10), 2.0 * pi / k);
    const double oo = MaxPropagatingRadius("oo0-c", k, h, c.l01, c.l10);
    const double ml = MaxPropagatingRadius("ml-c:" + std::to_string(4 * n), k, h, c.l01, c.l10);
    CHECK(ml < oo);
    CHECK(MaxPropagatingRadius("ml-c:" + std::to_string(64 * n), k, h, c.l01, c.l10) < ml);
  }
}

TEST_CASE("Mittag-Leffler at exactly the pole count can lose to oo0-c")
{
  // Counterexample to the pole-count heuristic: the truncation tail dominates near the poles.
  const double k = 2.0 * pi * 25.00107;
  const int n = n_min_pole(0.5, 2.0 * pi / k);
  CHECK(n == 26);
  CHECK(MaxPropagatingRadius("ml-c:26", k, 0.5, 0.5, 0.5) >
        MaxPropagatingRadius("oo0-c", k, 0.5, 0.5, 0.5));
}

TEST_CASE("minimum pole count")
{
  const double wavelength = 2.0 * pi / 157.085;
  CHECK(n_min_pole(0.875, wavelength) == 44);
  CHECK(n_min_pole(0.5, 1.0) == 1);
  CHECK(n_min_pole(1.0, 1.0) == 2);
}

TEST_CASE("symbol gap")
{
  CHECK(symbol_gap(2.0, 1.0, 5.0).real() == doctest::Approx(oracles::kGapS2K1L5).epsilon(1e-12));
  CHECK(std::abs(symbol_gap(40.0, 1.0, 1.0)) < 1e-30);
  CHECK(symbol_gap(1.0, 1.0, 2.0) == std::complex<double>(0.5));
}
