// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include "cavddm/convergence.hpp"
#include "cavddm/error.hpp"
#include "cavddm/krylov.hpp"
#include "cavddm/schwarz.hpp"

using namespace cavddm;
using std::numbers::pi;

namespace
{

CavityConfig SmallCavity(double ratio = 3.3, int K = 4, int M = 12)
{
  CavityConfig c;
  c.length = 1.0;
  c.height = 0.5;
  c.k = 2.0 * pi * ratio;
  c.excitation_modes = K;
  c.max_modes = M;
  return c;
}

CavityConfig DefaultCavity()
{
  auto c = SmallCavity(157.085 / (2.0 * pi), 50, 100);
  return c;
}

Partition TwoCells(double gamma)
{
  Partition p;
  p.length = 1.0;
  p.interfaces = {gamma};
  return p;
}

InterfaceState RandomState(std::size_t n, unsigned seed)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  InterfaceState v(n);
  for (auto &x : v)
  {
    x = {nd(rng), nd(rng)};
  }
  return v;
}

double Norm(const InterfaceState &v)
{
  double s = 0.0;
  for (const auto &x : v)
  {
    s += std::norm(x);
  }
  return std::sqrt(s);
}

std::vector<OperatorSpec> One(const char *text)
{
  return {parse_operator_spec(text)};
}

// Piecewise evaluation of a reconstructed mode on the nominal cells.
Complex Eval(const ModeField &f, const Partition &part, double x)
{
  for (int i = 0; i < part.Subdomains(); i++)
  {
    if (x <= part.NominalRight(i) || i == part.Subdomains() - 1)
    {
      return f.pieces[i].Value(x);
    }
  }
  return 0.0;
}

InterfaceState SolveTight(const SchwarzOperator &op)
{
  GmresOptions opt;
  opt.tol = 1e-13;
  return gmres([&](const InterfaceState &in, InterfaceState &out) { op.Apply(in, out); },
               op.BuildRhs(), opt)
      .first;
}

}  // namespace

TEST_CASE("mode set")
{
  CavityConfig c = SmallCavity();
  c.height = 1.0;
  c.max_modes = 3;
  c.excitation_modes = 3;
  const auto modes = mode_set(c);
  REQUIRE(modes.size() == 3);
  for (int m = 1; m <= 3; m++)
  {
    CHECK(modes[m - 1].m == m);
    CHECK(modes[m - 1].s == doctest::Approx(m * pi));
  }
  CHECK(DefaultCavity().PropagatingCount() == 25);
}

TEST_CASE("cavity validation")
{
  auto c = SmallCavity();
  c.max_modes = 2;
  c.excitation_modes = 3;
  CHECK_THROWS_AS(c.Validate(), std::invalid_argument);
  // k l = pi for the s -> 0 limit is not reachable, but m = 1 with kx l = pi is.
  auto r = SmallCavity();
  r.k = std::sqrt(std::pow(2.0 * pi, 2) + pi * pi);
  CHECK_THROWS(r.Validate());
}

TEST_CASE("subdomain solve reproduces the Dirichlet-to-Neumann identity")
{
  const auto cfg = SmallCavity();
  const double gamma = 0.1, l01 = gamma + 0.5;
  const auto part = TwoCells(gamma);
  const auto mode = cfg.Mode(1);
  const double kx = std::sqrt(cfg.k * cfg.k - mode.s * mode.s);
  const auto sol = subdomain_solve(mode, cfg, part, 0, BoundaryCondition::Dirichlet(0.0),
                                   BoundaryCondition::Dirichlet(1.0));
  for (double x : {-0.4, -0.1, 0.05})
  {
    const double expect = std::sin(kx * (0.5 + x)) / std::sin(kx * l01);
    CHECK(std::abs(sol.Value(x) - expect) < 1e-12);
  }
  CHECK(std::abs(sol.Derivative(gamma) - kx / std::tan(kx * l01)) < 1e-10 * kx);
  CHECK(std::abs(sol.Derivative(gamma) - dtn_cavity_dirichlet(mode.s, cfg.k, l01)) < 1e-10 * kx);
}

TEST_CASE("subdomain solve on the grazing branch is linear")
{
  auto cfg = SmallCavity();
  cfg.k = 2.0 * pi;  // s = k for m = 1
  cfg.excitation_modes = 1;
  cfg.max_modes = 1;
  const double gamma = -0.2, l01 = gamma + 0.5;
  const auto part = TwoCells(gamma);
  const auto sol = subdomain_solve(cfg.Mode(1), cfg, part, 0, BoundaryCondition::Dirichlet(0.0),
                                   BoundaryCondition::Dirichlet(1.0));
  CHECK(sol.branch == Branch::Grazing);
  CHECK(std::abs(sol.Value(-0.35) - (0.15 / l01)) < 1e-14);
  CHECK(std::abs(sol.Derivative(gamma) - 1.0 / l01) < 1e-12);
}

TEST_CASE("homogeneous subdomain data gives the zero solution")
{
  const auto cfg = SmallCavity();
  const auto part = TwoCells(0.0);
  const auto sol = subdomain_solve(cfg.Mode(2), cfg, part, 1, BoundaryCondition::Robin({0.0, -3.0}, 0.0),
                                   BoundaryCondition::Dirichlet(0.0));
  CHECK(sol.c1 == Complex(0.0));
  CHECK(sol.c2 == Complex(0.0));
}

TEST_CASE("Neumann wall reproduces the tangent symbol")
{
  auto cfg = SmallCavity();
  cfg.wall = WallKind::Neumann;
  const double gamma = 0.15, l01 = gamma + 0.5;
  const auto part = TwoCells(gamma);
  for (int m : {1, 2, 5})
  {
    const auto mode = cfg.Mode(m);
    const auto sol = subdomain_solve(mode, cfg, part, 0, BoundaryCondition::Neumann(0.0),
                                     BoundaryCondition::Dirichlet(1.0));
    const auto ratio = sol.Derivative(gamma) / sol.Value(gamma);
    const auto expect = dtn_cavity_neumann(mode.s, cfg.k, l01);
    CHECK(std::abs(ratio - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
  }
}

TEST_CASE("basis derivatives match finite differences")
{
  const double a = -0.3, b = 0.2, h = 1e-6;
  for (auto [br, kx] : {std::pair{Branch::Propagating, 17.0}, std::pair{Branch::Evanescent, 23.0},
                        std::pair{Branch::Grazing, 0.0}})
  {
    ModeSolution p{a, b, br, kx, {0.3, -1.1}, {0.7, 0.2}};
    for (double x : {-0.25, -0.01, 0.13})
    {
      const Complex fd = (p.Value(x + h) - p.Value(x - h)) / (2.0 * h);
      CHECK(std::abs(fd - p.Derivative(x)) <= 1e-6 * std::max(1.0, std::abs(p.Derivative(x))));
    }
  }
}

TEST_CASE("exact DtN operator is nilpotent for two subdomains")
{
  const auto cfg = SmallCavity();
  const auto part = Partition::uniform(cfg, 2);
  const SchwarzOperator op(cfg, part, One("dtn-c"));
  const auto x = RandomState(op.Size(), 1);
  const auto ax = op.Apply(x);
  const auto aax = op.Apply(ax);
  CHECK(Norm(aax) <= 1e-12 * Norm(x));
}

TEST_CASE("operator is linear and block diagonal over modes")
{
  const auto cfg = SmallCavity();
  const auto part = Partition::uniform(cfg, 4);
  const SchwarzOperator op(cfg, part, One("pade-c:8"));
  const auto zero = op.Apply(InterfaceState(op.Size(), 0.0));
  CHECK(Norm(zero) == 0.0);
  const int bs = op.BlockSize();
  for (int mi : {0, 5, 11})
  {
    for (int j = 0; j < bs; j++)
    {
      InterfaceState e(op.Size(), 0.0);
      e[static_cast<std::size_t>(mi) * bs + j] = 1.0;
      const auto y = op.Apply(e);
      for (std::size_t r = 0; r < y.size(); r++)
      {
        if (static_cast<int>(r) / bs != mi)
        {
          CHECK(y[r] == Complex(0.0));
        }
      }
    }
  }
}

TEST_CASE("parallel operator agrees with the serial reference")
{
  const auto cfg = SmallCavity(6.3, 10, 30);
  for (int D : {2, 3, 5})
  {
    const auto part = Partition::uniform(cfg, D);
    const auto specs = One("pade-c:16+r:0.05");
    const SchwarzOperator op(cfg, part, specs);
    const auto x = RandomState(op.Size(), D);
    const auto par = op.Apply(x);
    const auto ser = reference::apply_A_serial(x, cfg, part, specs);
    REQUIRE(par.size() == ser.size());
    double diff = 0.0;
    for (std::size_t i = 0; i < par.size(); i++)
    {
      diff = std::max(diff, std::abs(par[i] - ser[i]));
    }
    CHECK(diff <= 1e-11 * Norm(par));
    const auto again = op.Apply(x);
    CHECK(again == par);
    CHECK(apply_A(x, cfg, part, specs) == par);
  }
}

TEST_CASE("two-subdomain blocks carry the convergence radius")
{
  const auto cfg = SmallCavity(6.3, 10, 30);
  const double gamma = 0.12;
  const auto part = TwoCells(gamma);
  for (const char *text : {"oo0-c", "pade-c:8", "ml-c:20", "oo0-u", "pade-u:8+r:0.1"})
  {
    const SchwarzOperator op(cfg, part, One(text));
    for (int mi = 0; mi < cfg.max_modes; mi++)
    {
      const auto blk = op.ModeBlock(mi);  // column-major 2 x 2, zero diagonal
      CHECK(blk[0] == Complex(0.0));
      CHECK(blk[3] == Complex(0.0));
      const Complex prod = blk[1] * blk[2];
      const auto mode = cfg.Mode(mi + 1);
      const auto r = radius_for_spec(parse_operator_spec(text), mode.s, cfg.k, gamma + 0.5, 0.5 - gamma);
      CHECK(std::abs(prod - r.rho_squared) <= 1e-10 * std::max(1.0, std::abs(r.rho_squared)));
    }
  }
}

TEST_CASE("zeroth-order unbounded operator has unit spectral radius on propagating modes")
{
  const auto cfg = SmallCavity(6.3, 10, 30);
  const auto part = Partition::uniform(cfg, 2);
  const SchwarzOperator op(cfg, part, One("oo0-u"));
  for (int mi = 0; mi < cfg.PropagatingCount(); mi++)
  {
    const auto blk = op.ModeBlock(mi);
    CHECK(std::abs(std::sqrt(std::abs(blk[1] * blk[2])) - 1.0) < 1e-12);
  }
}

TEST_CASE("right-hand side")
{
  {
    auto cfg = SmallCavity();
    cfg.excitation_modes = 0;
    const auto b = build_rhs(cfg, Partition::uniform(cfg, 3), One("oo0-c"));
    CHECK(Norm(b) == 0.0);
  }
  {
    const auto cfg = SmallCavity();
    const auto part = Partition::uniform(cfg, 3);
    const SchwarzOperator op(cfg, part, One("oo0-c"));
    const auto b = op.BuildRhs();
    for (int mi = cfg.excitation_modes; mi < cfg.max_modes; mi++)
    {
      for (int j = 0; j < op.BlockSize(); j++)
      {
        CHECK(b[static_cast<std::size_t>(mi) * op.BlockSize() + j] == Complex(0.0));
      }
    }
  }
  {
    auto cfg = SmallCavity();
    cfg.excitation_modes = 1;
    cfg.max_modes = 1;
    const double gamma = 0.0, a = -0.5, len = gamma - a;
    const auto part = TwoCells(gamma);
    const auto spec = parse_operator_spec("oo0-u+r:0.2");
    const auto mode = cfg.Mode(1);
    const double kx = std::sqrt(cfg.k * cfg.k - mode.s * mode.s);
    const Complex lam_l = apply_spec(spec, mode.s, cfg.k, 0.5 - gamma);
    const Complex lam_r = apply_spec(spec, mode.s, cfg.k, gamma + 0.5);
    // p = cos(kx (x - a)) + c2 sin(kx (x - a)) with p' + lam_l p = 0 at gamma.
    const double c = std::cos(kx * len), s = std::sin(kx * len);
    const Complex c2 = (kx * s - lam_l * c) / (kx * c + lam_l * s);
    const Complex p = c + c2 * s, dp = -kx * s + c2 * kx * c;
    const auto b = build_rhs(cfg, part, {spec});
    CHECK(std::abs(b[0] - (-dp + lam_r * p)) < 1e-11 * std::abs(b[0]));
    CHECK(b[1] == Complex(0.0));
  }
}

TEST_CASE("fixed point with exact DtN converges in two sweeps")
{
  const auto cfg = SmallCavity();
  const auto part = Partition::uniform(cfg, 2);
  const auto h = fixed_point_run(cfg, part, One("dtn-c"), 10);
  CHECK(h.converged);
  CHECK(h.iterations == 2);
  CHECK(h.increments.back() < 1e-12);
}

TEST_CASE("fixed point with zero excitation stays at zero")
{
  auto cfg = SmallCavity();
  cfg.excitation_modes = 0;
  int calls = 0;
  const auto h = fixed_point_run(cfg, Partition::uniform(cfg, 3), One("oo0-c"), 5,
                                 [&](int, double norm, double) {
                                   calls++;
                                   CHECK(norm == 0.0);
                                 });
  CHECK(calls >= 1);
  CHECK(Norm(h.state) == 0.0);
}

TEST_CASE("fixed point diverges on a mode with radius above one")
{
  const auto cfg = SmallCavity(3.3, 2, 2);
  const auto part = Partition::uniform(cfg, 2);
  const auto r = radius_for_spec(parse_operator_spec("oo0-c"), cfg.Mode(2).s, cfg.k, 0.5, 0.5);
  REQUIRE(r.rho_abs > 1.0);
  const auto h = fixed_point_run(cfg, part, One("oo0-c"), 60);
  CHECK_FALSE(h.converged);
  CHECK(h.norms.back() > 100.0 * h.norms.front());
}

TEST_CASE("closed-form cavity solution")
{
  const auto cfg = SmallCavity(3.3, 12, 12);
  const auto ref = closed_form_solution(cfg);
  REQUIRE(ref.size() == 12);
  for (const auto &m : ref)
  {
    CHECK(std::abs(m.Value(-0.5) - 1.0) < 1e-12);
    CHECK(std::abs(m.Value(0.5)) < 1e-12);
    if (m.branch == Branch::Evanescent)
    {
      double prev = 2.0;
      for (double x = -0.5; x <= 0.5; x += 0.05)
      {
        const double v = std::abs(m.Value(x));
        CHECK(v < prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("reconstruction with exact DtN matches the closed form")
{
  const auto cfg = SmallCavity(3.3, 8, 16);
  for (int D : {2, 4})
  {
    const auto part = Partition::uniform(cfg, D);
    const SchwarzOperator op(cfg, part, One("dtn-c"));
    const auto sol = op.Reconstruct(SolveTight(op));
    const auto ref = closed_form_solution(cfg);
    for (int mi = 0; mi < cfg.max_modes; mi++)
    {
      for (double x = -0.49; x < 0.5; x += 0.07)
      {
        const Complex want = ref[mi].Value(x);
        CHECK(std::abs(Eval(sol[mi], part, x) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
      }
    }
    CHECK(error_l2(sol, ref, cfg, part) < 1e-10);
  }
}

TEST_CASE("reconstructed solution does not depend on the partition")
{
  const auto cfg = SmallCavity(3.3, 8, 16);
  const auto p2 = Partition::uniform(cfg, 2), p4 = Partition::uniform(cfg, 4);
  const SchwarzOperator op2(cfg, p2, One("pade-c:16")), op4(cfg, p4, One("oo0-c"));
  const auto s2 = op2.Reconstruct(SolveTight(op2));
  const auto s4 = op4.Reconstruct(SolveTight(op4));
  for (int mi = 0; mi < cfg.max_modes; mi++)
  {
    for (double x = -0.45; x < 0.5; x += 0.1)
    {
      CHECK(std::abs(Eval(s2[mi], p2, x) - Eval(s4[mi], p4, x)) < 1e-8);
    }
  }
}

TEST_CASE("zero excitation reconstructs the zero field")
{
  auto cfg = SmallCavity();
  cfg.excitation_modes = 0;
  const auto part = Partition::uniform(cfg, 3);
  const SchwarzOperator op(cfg, part, One("oo0-c"));
  const auto sol = op.Reconstruct(InterfaceState(op.Size(), 0.0));
  for (const auto &f : sol)
  {
    for (const auto &p : f.pieces)
    {
      CHECK(p.c1 == Complex(0.0));
      CHECK(p.c2 == Complex(0.0));
    }
  }
}

TEST_CASE("transmission conditions hold at a converged state")
{
  const auto cfg = SmallCavity(6.3, 10, 20);
  const auto part = Partition::uniform(cfg, 4);
  const SchwarzOperator op(cfg, part, One("pade-c:16"));
  const auto sol = op.Reconstruct(SolveTight(op));
  for (int mi = 0; mi < cfg.max_modes; mi++)
  {
    for (int q = 0; q < part.Interfaces(); q++)
    {
      const double x = part.interfaces[q];
      const auto &left = sol[mi].pieces[q];
      const auto &right = sol[mi].pieces[q + 1];
      const Complex lr = op.LambdaLeftEnd(mi, q), rl = op.LambdaRightEnd(mi, q);
      const Complex a = -left.Derivative(x) + lr * left.Value(x);
      const Complex b = -right.Derivative(x) + lr * right.Value(x);
      const Complex c = left.Derivative(x) + rl * left.Value(x);
      const Complex d = right.Derivative(x) + rl * right.Value(x);
      const double scale = std::max({1.0, std::abs(a), std::abs(c)});
      CHECK(std::abs(a - b) <= 1e-9 * scale);
      CHECK(std::abs(c - d) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("relative L2 error")
{
  // Propagating modes only, so the closed form is a plain sine on each cell.
  const auto cfg = SmallCavity(6.3, 6, 6);
  const auto part = Partition::uniform(cfg, 3);
  const auto ref = closed_form_solution(cfg);
  std::vector<ModeField> exact, doubled;
  for (const auto &m : ref)
  {
    ModeField f{m.m, {}}, g{m.m, {}};
    for (int i = 0; i < part.Subdomains(); i++)
    {
      const double a = part.Left(i), b = part.Right(i), r0 = 0.5 - a;
      const double den = std::sin(m.kx * cfg.length);
      ModeSolution p{a, b, Branch::Propagating, m.kx, std::sin(m.kx * r0) / den,
                     -std::cos(m.kx * r0) / den};
      f.pieces.push_back(p);
      p.c1 *= 2.0;
      p.c2 *= 2.0;
      g.pieces.push_back(p);
    }
    exact.push_back(f);
    doubled.push_back(g);
  }
  CHECK(error_l2(exact, ref, cfg, part) < 1e-13);
  CHECK(error_l2(doubled, ref, cfg, part) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero reference is rejected")
{
  auto cfg = SmallCavity();
  cfg.excitation_modes = 0;
  const auto part = Partition::uniform(cfg, 2);
  const SchwarzOperator op(cfg, part, One("oo0-c"));
  const auto sol = op.Reconstruct(InterfaceState(op.Size(), 0.0));
  CHECK_THROWS_AS(error_l2(sol, closed_form_solution(cfg), cfg, part), ZeroReference);
}

TEST_CASE("overlapping partition geometry")
{
  const auto cfg = SmallCavity();
  const auto p = Partition::uniform(cfg, 4, 0.01);
  for (int q = 0; q < p.Interfaces(); q++)
  {
    CHECK(p.Right(q) - p.Left(q + 1) == doctest::Approx(0.02));
    CHECK(p.WallDistanceRight(q) == doctest::Approx(0.5 - p.interfaces[q] - 0.01));
    CHECK(p.WallDistanceLeft(q) == doctest::Approx(p.interfaces[q] - 0.01 + 0.5));
  }
  CHECK_THROWS(Partition::uniform(cfg, 4, 0.2).Validate());
}

TEST_CASE("spec list must match the interfaces")
{
  const auto cfg = SmallCavity();
  const auto part = Partition::uniform(cfg, 4);
  CHECK_THROWS_AS(SchwarzOperator(cfg, part, {parse_operator_spec("oo0-c"), parse_operator_spec("oo0-u")}),
                  std::invalid_argument);
  CHECK_NOTHROW(SchwarzOperator(cfg, part,
                                {parse_operator_spec("oo0-c"), parse_operator_spec("oo0-u"),
                                 parse_operator_spec("pade-c:4")}));
}
