// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "cavddm/schwarz.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <boost/math/quadrature/gauss.hpp>
#include "cavddm/error.hpp"
#include "cavddm/parallel.hpp"

namespace cavddm
{

namespace
{

constexpr double kSingularTol = 1.0e-13;

double WaveNumberX(Branch br, double s, double k)
{
  switch (br)
  {
    case Branch::Propagating:
      return std::sqrt((k - s) * (k + s));
    case Branch::Evanescent:
      return std::sqrt((s - k) * (s + k));
    case Branch::Grazing:
      return 0.0;
  }
  return 0.0;
}

// Row of the 2x2 system for one end: mu phi + nu n phi'.
std::array<Complex, 2> EndRow(Branch br, double kx, double a, double b, double x, double normal,
                              const BoundaryCondition &bc)
{
  std::array<double, 2> phi{}, dphi{};
  mode_basis(br, kx, a, b, x, phi, dphi);
  Complex mu = 1.0, nu = 0.0;
  switch (bc.type)
  {
    case BoundaryCondition::Type::Dirichlet:
      break;
    case BoundaryCondition::Type::Neumann:
      mu = 0.0;
      nu = 1.0;
      break;
    case BoundaryCondition::Type::Robin:
      mu = bc.lambda;
      nu = 1.0;
      break;
  }
  return {mu * phi[0] + nu * normal * dphi[0], mu * phi[1] + nu * normal * dphi[1]};
}

// Inverse of [[r0], [r1]], or SingularSubproblem when the determinant is negligible.
std::array<Complex, 4> Invert(const std::array<Complex, 2> &r0, const std::array<Complex, 2> &r1,
                              int m, int i)
{
  const Complex det = r0[0] * r1[1] - r0[1] * r1[0];
  const double scale = std::hypot(std::abs(r0[0]), std::abs(r0[1])) *
                       std::hypot(std::abs(r1[0]), std::abs(r1[1]));
  if (!(std::abs(det) > kSingularTol * scale))
  {
    throw SingularSubproblem("singular subdomain problem (mode " + std::to_string(m) +
                                 ", subdomain " + std::to_string(i) + ")",
                             m, i);
  }
  return {r1[1] / det, -r0[1] / det, -r1[0] / det, r0[0] / det};
}

BoundaryCondition WallCondition(WallKind wall, Complex value)
{
  return wall == WallKind::Dirichlet ? BoundaryCondition::Dirichlet(value)
                                     : BoundaryCondition::Neumann(value);
}

// Left-wall data for mode m: unit value, or unit x-derivative (outward derivative -1).
Complex Excitation(const CavityConfig &cfg, int m)
{
  if (m > cfg.excitation_modes)
  {
    return 0.0;
  }
  return cfg.wall == WallKind::Dirichlet ? 1.0 : -1.0;
}

Complex TraceLR(const ModeSolution &p, double x, Complex lambda)
{
  return -p.Derivative(x) + lambda * p.Value(x);
}

Complex TraceRL(const ModeSolution &p, double x, Complex lambda)
{
  return p.Derivative(x) + lambda * p.Value(x);
}

Complex EvaluateSymbol(const OperatorSpec &spec, const ModeFrequency &mode, double k, double l)
{
  try
  {
    return apply_spec(spec, mode.s, k, l);
  }
  catch (const PoleHit &e)
  {
    throw PoleHit(std::string(e.what()) + " (mode " + std::to_string(mode.m) + ")");
  }
}

double Norm2(const InterfaceState &v)
{
  double s = 0.0;
  for (const auto &x : v)
  {
    s += std::norm(x);
  }
  return std::sqrt(s);
}

}  // namespace

void mode_basis(Branch br, double kx, double a, double b, double x, std::array<double, 2> &phi,
                std::array<double, 2> &dphi)
{
  switch (br)
  {
    case Branch::Propagating:
    {
      const double t = kx * (x - a);
      const double c = std::cos(t), s = std::sin(t);
      phi = {c, s};
      dphi = {-kx * s, kx * c};
      break;
    }
    case Branch::Evanescent:
    {
      const double f1 = std::exp(-kx * (x - a)), f2 = std::exp(-kx * (b - x));
      phi = {f1, f2};
      dphi = {-kx * f1, kx * f2};
      break;
    }
    case Branch::Grazing:
    {
      const double len = b - a;
      phi = {1.0, (x - a) / len};
      dphi = {0.0, 1.0 / len};
      break;
    }
  }
}

Complex ModeSolution::Value(double x) const
{
  std::array<double, 2> phi{}, dphi{};
  mode_basis(branch, kx, a, b, x, phi, dphi);
  return c1 * phi[0] + c2 * phi[1];
}

Complex ModeSolution::Derivative(double x) const
{
  std::array<double, 2> phi{}, dphi{};
  mode_basis(branch, kx, a, b, x, phi, dphi);
  return c1 * dphi[0] + c2 * dphi[1];
}

ModeSolution subdomain_solve(const ModeFrequency &mode, const CavityConfig &cfg,
                             const Partition &part, int i, const BoundaryCondition &left,
                             const BoundaryCondition &right)
{
  if (i < 0 || i >= part.Subdomains())
  {
    throw std::invalid_argument("subdomain_solve: subdomain index out of range");
  }
  ModeSolution sol;
  sol.a = part.Left(i);
  sol.b = part.Right(i);
  sol.branch = classify_branch(mode.s, cfg.k);
  sol.kx = WaveNumberX(sol.branch, mode.s, cfg.k);
  const auto r0 = EndRow(sol.branch, sol.kx, sol.a, sol.b, sol.a, -1.0, left);
  const auto r1 = EndRow(sol.branch, sol.kx, sol.a, sol.b, sol.b, +1.0, right);
  const auto inv = Invert(r0, r1, mode.m, i);
  sol.c1 = inv[0] * left.value + inv[1] * right.value;
  sol.c2 = inv[2] * left.value + inv[3] * right.value;
  return sol;
}

std::vector<OperatorSpec> expand_specs(const std::vector<OperatorSpec> &specs, int interfaces)
{
  if (interfaces == 0)
  {
    return {};
  }
  if (specs.size() == 1)
  {
    specs[0].Validate();
    return std::vector<OperatorSpec>(interfaces, specs[0]);
  }
  if (static_cast<int>(specs.size()) != interfaces)
  {
    throw std::invalid_argument("need one operator spec per interface, or a single spec");
  }
  for (const auto &s : specs)
  {
    s.Validate();
  }
  return specs;
}

SchwarzOperator::SchwarzOperator(const CavityConfig &cfg, const Partition &part,
                                 const std::vector<OperatorSpec> &specs)
  : cfg_(cfg), part_(part)
{
  cfg_.Validate();
  part_.Validate();
  const auto sp = expand_specs(specs, part_.Interfaces());
  const int M = cfg_.max_modes, nI = part_.Interfaces(), D = part_.Subdomains();
  lam_l_.resize(static_cast<std::size_t>(M) * nI);
  lam_r_.resize(static_cast<std::size_t>(M) * nI);
  transfer_.resize(static_cast<std::size_t>(M) * D);
  for (int mi = 0; mi < M; mi++)
  {
    const ModeFrequency mode = cfg_.Mode(mi + 1);
    for (int q = 0; q < nI; q++)
    {
      lam_l_[Idx(mi, q)] = EvaluateSymbol(sp[q], mode, cfg_.k, part_.WallDistanceRight(q));
      lam_r_[Idx(mi, q)] = EvaluateSymbol(sp[q], mode, cfg_.k, part_.WallDistanceLeft(q));
    }
    const Branch br = classify_branch(mode.s, cfg_.k);
    const double kx = WaveNumberX(br, mode.s, cfg_.k);
    for (int i = 0; i < D; i++)
    {
      const double a = part_.Left(i), b = part_.Right(i);
      const auto r0 = EndRow(br, kx, a, b, a, -1.0, LeftCondition(mi, i, nullptr));
      const auto r1 = EndRow(br, kx, a, b, b, +1.0, RightCondition(mi, i, nullptr));
      const auto inv = Invert(r0, r1, mode.m, i);
      std::array<Complex, 4> t{};
      std::array<double, 2> phi{}, dphi{};
      if (i > 0)
      {
        // p' + lambda p at the right end of subdomain i - 1.
        const Complex lam = lam_l_[Idx(mi, i - 1)];
        mode_basis(br, kx, a, b, part_.Right(i - 1), phi, dphi);
        const Complex row0 = dphi[0] + lam * phi[0], row1 = dphi[1] + lam * phi[1];
        t[0] = row0 * inv[0] + row1 * inv[2];
        t[1] = row0 * inv[1] + row1 * inv[3];
      }
      if (i < D - 1)
      {
        // -p' + lambda p at the left end of subdomain i + 1.
        const Complex lam = lam_r_[Idx(mi, i)];
        mode_basis(br, kx, a, b, part_.Left(i + 1), phi, dphi);
        const Complex row0 = -dphi[0] + lam * phi[0], row1 = -dphi[1] + lam * phi[1];
        t[2] = row0 * inv[0] + row1 * inv[2];
        t[3] = row0 * inv[1] + row1 * inv[3];
      }
      transfer_[static_cast<std::size_t>(mi) * D + i] = t;
    }
  }
}

BoundaryCondition SchwarzOperator::LeftCondition(int mi, int i, const InterfaceState *state) const
{
  if (i == 0)
  {
    return WallCondition(cfg_.wall, state ? Excitation(cfg_, mi + 1) : Complex(0.0));
  }
  const Complex g = state ? (*state)[static_cast<std::size_t>(mi) * BlockSize() + 2 * (i - 1)]
                          : Complex(0.0);
  return BoundaryCondition::Robin(lam_r_[Idx(mi, i - 1)], g);
}

BoundaryCondition SchwarzOperator::RightCondition(int mi, int i, const InterfaceState *state) const
{
  if (i == part_.Subdomains() - 1)
  {
    return WallCondition(cfg_.wall, 0.0);
  }
  const Complex g = state ? (*state)[static_cast<std::size_t>(mi) * BlockSize() + 2 * i + 1]
                          : Complex(0.0);
  return BoundaryCondition::Robin(lam_l_[Idx(mi, i)], g);
}

void SchwarzOperator::ApplyMode(int mi, const Complex *in, Complex *out) const
{
  const int D = part_.Subdomains();
  for (int i = 0; i < D; i++)
  {
    const Complex gl = i > 0 ? in[2 * (i - 1)] : Complex(0.0);
    const Complex gr = i < D - 1 ? in[2 * i + 1] : Complex(0.0);
    const auto &t = transfer_[static_cast<std::size_t>(mi) * D + i];
    if (i > 0)
    {
      out[2 * (i - 1) + 1] = t[0] * gl + t[1] * gr;
    }
    if (i < D - 1)
    {
      out[2 * i] = t[2] * gl + t[3] * gr;
    }
  }
}

void SchwarzOperator::Apply(const InterfaceState &in, InterfaceState &out) const
{
  if (in.size() != Size())
  {
    throw std::invalid_argument("SchwarzOperator::Apply: state size mismatch");
  }
  out.resize(Size());
  const int M = Modes(), bs = BlockSize();
#pragma omp parallel for schedule(static)
  for (int mi = 0; mi < M; mi++)
  {
    ApplyMode(mi, in.data() + static_cast<std::size_t>(mi) * bs,
              out.data() + static_cast<std::size_t>(mi) * bs);
  }
}

InterfaceState SchwarzOperator::Apply(const InterfaceState &in) const
{
  InterfaceState out;
  Apply(in, out);
  return out;
}

std::vector<Complex> SchwarzOperator::ModeBlock(int mi) const
{
  const int n = BlockSize();
  std::vector<Complex> block(static_cast<std::size_t>(n) * n);
  std::vector<Complex> e(n);
  for (int j = 0; j < n; j++)
  {
    std::fill(e.begin(), e.end(), Complex(0.0));
    e[j] = 1.0;
    ApplyMode(mi, e.data(), block.data() + static_cast<std::size_t>(j) * n);
  }
  return block;
}

InterfaceState SchwarzOperator::BuildRhs() const
{
  InterfaceState b(Size(), 0.0);
  if (part_.Interfaces() == 0)
  {
    return b;
  }
  const int K = std::min(cfg_.excitation_modes, Modes()), bs = BlockSize();
  const InterfaceState zero(Size(), 0.0);
  parallel_for(K, [&](int mi) {
    // Only subdomain 0 touches the excited wall; every other solve is identically zero.
    const ModeSolution p = subdomain_solve(cfg_.Mode(mi + 1), cfg_, part_, 0,
                                           LeftCondition(mi, 0, &zero),
                                           RightCondition(mi, 0, &zero));
    b[static_cast<std::size_t>(mi) * bs] = TraceLR(p, part_.Left(1), lam_r_[Idx(mi, 0)]);
  });
  return b;
}

std::vector<ModeField> SchwarzOperator::Reconstruct(const InterfaceState &state) const
{
  if (state.size() != Size())
  {
    throw std::invalid_argument("reconstruct: state size mismatch");
  }
  const int M = Modes(), D = part_.Subdomains();
  std::vector<ModeField> out(M);
  parallel_for(M, [&](int mi) {
    out[mi].m = mi + 1;
    out[mi].pieces.resize(D);
    for (int i = 0; i < D; i++)
    {
      out[mi].pieces[i] = subdomain_solve(cfg_.Mode(mi + 1), cfg_, part_, i,
                                          LeftCondition(mi, i, &state),
                                          RightCondition(mi, i, &state));
    }
  });
  return out;
}

namespace reference
{

InterfaceState apply_A_serial(const InterfaceState &state, const CavityConfig &cfg,
                              const Partition &part, const std::vector<OperatorSpec> &specs)
{
  cfg.Validate();
  part.Validate();
  const int nI = part.Interfaces(), D = part.Subdomains(), bs = 2 * nI;
  const auto sp = expand_specs(specs, nI);
  if (state.size() != static_cast<std::size_t>(cfg.max_modes) * bs)
  {
    throw std::invalid_argument("apply_A_serial: state size mismatch");
  }
  InterfaceState out(state.size(), 0.0);
  const BoundaryCondition wall = WallCondition(cfg.wall, 0.0);
  for (int mi = 0; mi < cfg.max_modes; mi++)
  {
    const ModeFrequency mode = cfg.Mode(mi + 1);
    const Complex *g = state.data() + static_cast<std::size_t>(mi) * bs;
    Complex *o = out.data() + static_cast<std::size_t>(mi) * bs;
    for (int i = 0; i < D; i++)
    {
      const BoundaryCondition left =
          i == 0 ? wall
                 : BoundaryCondition::Robin(
                       EvaluateSymbol(sp[i - 1], mode, cfg.k, part.WallDistanceLeft(i - 1)),
                       g[2 * (i - 1)]);
      const BoundaryCondition right =
          i == D - 1 ? wall
                     : BoundaryCondition::Robin(
                           EvaluateSymbol(sp[i], mode, cfg.k, part.WallDistanceRight(i)),
                           g[2 * i + 1]);
      const ModeSolution p = subdomain_solve(mode, cfg, part, i, left, right);
      if (i > 0)
      {
        const Complex lam = EvaluateSymbol(sp[i - 1], mode, cfg.k, part.WallDistanceRight(i - 1));
        o[2 * (i - 1) + 1] = TraceRL(p, part.Right(i - 1), lam);
      }
      if (i < D - 1)
      {
        const Complex lam = EvaluateSymbol(sp[i], mode, cfg.k, part.WallDistanceLeft(i));
        o[2 * i] = TraceLR(p, part.Left(i + 1), lam);
      }
    }
  }
  return out;
}

}  // namespace reference

InterfaceState apply_A(const InterfaceState &state, const CavityConfig &cfg,
                       const Partition &part, const std::vector<OperatorSpec> &specs)
{
  return SchwarzOperator(cfg, part, specs).Apply(state);
}

InterfaceState build_rhs(const CavityConfig &cfg, const Partition &part,
                         const std::vector<OperatorSpec> &specs)
{
  return SchwarzOperator(cfg, part, specs).BuildRhs();
}

FixedPointHistory fixed_point_run(const CavityConfig &cfg, const Partition &part,
                                  const std::vector<OperatorSpec> &specs, int n_iters,
                                  const std::function<void(int, double, double)> &observer,
                                  double tol)
{
  if (n_iters < 1)
  {
    throw std::invalid_argument("fixed_point_run: need at least one iteration");
  }
  const SchwarzOperator op(cfg, part, specs);
  const InterfaceState b = op.BuildRhs();
  FixedPointHistory h;
  h.state.assign(op.Size(), 0.0);
  InterfaceState next;
  for (int n = 1; n <= n_iters; n++)
  {
    op.Apply(h.state, next);
    double diff = 0.0;
    for (std::size_t i = 0; i < next.size(); i++)
    {
      next[i] += b[i];
      diff += std::norm(next[i] - h.state[i]);
    }
    const double norm = Norm2(next);
    const double inc = norm > 0.0 ? std::sqrt(diff) / norm : std::sqrt(diff);
    h.state.swap(next);
    h.norms.push_back(norm);
    h.increments.push_back(inc);
    h.iterations = n;
    if (observer)
    {
      observer(n, norm, inc);
    }
    if (inc < tol)
    {
      h.converged = true;
      break;
    }
    if (!std::isfinite(norm))
    {
      break;
    }
  }
  return h;
}

std::vector<ModeField> reconstruct_solution(const InterfaceState &state, const CavityConfig &cfg,
                                            const Partition &part,
                                            const std::vector<OperatorSpec> &specs)
{
  return SchwarzOperator(cfg, part, specs).Reconstruct(state);
}

Complex ClosedFormMode::Value(double x) const
{
  if (!excited)
  {
    return 0.0;
  }
  const double r = length / 2.0 - x;  // distance to the far wall
  const bool dirichlet = wall == WallKind::Dirichlet;
  switch (branch)
  {
    case Branch::Propagating:
      return dirichlet ? std::sin(kx * r) / std::sin(kx * length)
                       : std::cos(kx * r) / (kx * std::sin(kx * length));
    case Branch::Grazing:
      return r / length;
    case Branch::Evanescent:
    {
      // sinh(kx r) / sinh(kx l) and cosh(kx r) / sinh(kx l) in decaying exponentials.
      const double decay = std::exp(-kx * (length - r));
      const double den = -std::expm1(-2.0 * kx * length);
      if (dirichlet)
      {
        return decay * -std::expm1(-2.0 * kx * r) / den;
      }
      return -decay * (1.0 + std::exp(-2.0 * kx * r)) / (kx * den);
    }
  }
  return 0.0;
}

std::vector<ClosedFormMode> closed_form_solution(const CavityConfig &cfg)
{
  std::vector<ClosedFormMode> out;
  out.reserve(cfg.max_modes);
  for (int m = 1; m <= cfg.max_modes; m++)
  {
    const ModeFrequency mode = cfg.Mode(m);
    ClosedFormMode c;
    c.m = m;
    c.excited = m <= cfg.excitation_modes;
    c.branch = classify_branch(mode.s, cfg.k);
    c.kx = WaveNumberX(c.branch, mode.s, cfg.k);
    c.length = cfg.length;
    c.wall = cfg.wall;
    if (c.excited)
    {
      const bool resonant =
          (c.branch == Branch::Propagating && std::abs(std::sin(c.kx * cfg.length)) < 1.0e-12) ||
          (c.branch == Branch::Grazing && cfg.wall == WallKind::Neumann);
      if (resonant)
      {
        throw ResonantConfig("closed form: resonant mode " + std::to_string(m));
      }
    }
    out.push_back(c);
  }
  return out;
}

double error_l2(const std::vector<ModeField> &sol, const std::vector<ClosedFormMode> &ref,
                const CavityConfig &cfg, const Partition &part)
{
  if (sol.size() != ref.size() || static_cast<int>(sol.size()) != cfg.max_modes)
  {
    throw std::invalid_argument("error_l2: mode count mismatch");
  }
  using Rule = boost::math::quadrature::gauss<double, 32>;
  double num = 0.0, den = 0.0;
  for (std::size_t mi = 0; mi < sol.size(); mi++)
  {
    const auto &f = sol[mi];
    const auto &r = ref[mi];
    if (static_cast<int>(f.pieces.size()) != part.Subdomains())
    {
      throw std::invalid_argument("error_l2: piece count mismatch");
    }
    const double rate = std::max(r.kx, f.pieces.front().kx);
    for (int i = 0; i < part.Subdomains(); i++)
    {
      const double x0 = part.NominalLeft(i), x1 = part.NominalRight(i);
      // Each panel spans at most two wavelengths (or two decay lengths scaled by 2 pi).
      const int panels =
          std::max(1, static_cast<int>(std::ceil(rate * (x1 - x0) / (4.0 * std::numbers::pi))));
      const double w = (x1 - x0) / panels;
      const ModeSolution &p = f.pieces[i];
      for (int j = 0; j < panels; j++)
      {
        const double a = x0 + j * w, b = a + w;
        num += Rule::integrate([&](double x) { return std::norm(p.Value(x) - r.Value(x)); }, a, b);
        den += Rule::integrate([&](double x) { return std::norm(r.Value(x)); }, a, b);
      }
    }
  }
  if (!(den > 1.0e-300))
  {
    throw ZeroReference("error_l2: reference solution has zero norm");
  }
  return std::sqrt(num / den);
}

}  // namespace cavddm
