// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CAVDDM_SCHWARZ_HPP
#define CAVDDM_SCHWARZ_HPP

#include <array>
#include <complex>
#include <functional>
#include <vector>
#include "cavddm/cavity.hpp"
#include "cavddm/symbols.hpp"

namespace cavddm
{

using Complex = std::complex<double>;

//
// Robin traces g for every (mode, interface), mode-major. Within a mode, entry 2q is the
// left-to-right trace -p' + lambda p that feeds the left end of subdomain q + 1 and
// entry 2q + 1 the right-to-left trace p' + lambda p that feeds the right end of subdomain q.
//
using InterfaceState = std::vector<Complex>;

//
// Boundary condition at one end of a subdomain, written with the outward normal n:
// Dirichlet p = value, Neumann n p' = value, Robin n p' + lambda p = value.
//
struct BoundaryCondition
{
  enum class Type
  {
    Dirichlet,
    Neumann,
    Robin
  };
  Type type = Type::Dirichlet;
  Complex lambda = 0.0;
  Complex value = 0.0;

  static BoundaryCondition Dirichlet(Complex v) { return {Type::Dirichlet, 0.0, v}; }
  static BoundaryCondition Neumann(Complex v) { return {Type::Neumann, 0.0, v}; }
  static BoundaryCondition Robin(Complex lambda, Complex v) { return {Type::Robin, lambda, v}; }
};

//
// Closed-form solution of p'' + (k^2 - s^2) p = 0 on [a, b]:
// c1 cos(kx (x-a)) + c2 sin(kx (x-a)) when propagating, c1 e^{-kx (x-a)} + c2 e^{-kx (b-x)}
// when evanescent, c1 + c2 (x-a)/(b-a) when grazing.
//
struct ModeSolution
{
  double a = 0.0, b = 0.0;
  Branch branch = Branch::Propagating;
  double kx = 0.0;
  Complex c1 = 0.0, c2 = 0.0;

  Complex Value(double x) const;
  Complex Derivative(double x) const;
};

// One mode of the assembled field: one piece per subdomain.
struct ModeField
{
  int m = 1;
  std::vector<ModeSolution> pieces;
};

// Basis values (phi_1, phi_2) and their x-derivatives on [a, b].
void mode_basis(Branch br, double kx, double a, double b, double x, std::array<double, 2> &phi,
                std::array<double, 2> &dphi);

// Exact solve of the mode equation on subdomain i with the given end conditions.
ModeSolution subdomain_solve(const ModeFrequency &mode, const CavityConfig &cfg,
                             const Partition &part, int i, const BoundaryCondition &left,
                             const BoundaryCondition &right);

//
// Matrix-free interface operator A of the Schwarz iteration. Symbols and per-subdomain
// transfer matrices are precomputed once; Apply is parallel over modes.
//
class SchwarzOperator
{
public:
  // specs holds one operator per interface, or a single operator used everywhere.
  SchwarzOperator(const CavityConfig &cfg, const Partition &part,
                  const std::vector<OperatorSpec> &specs);

  int Modes() const { return cfg_.max_modes; }
  int BlockSize() const { return 2 * part_.Interfaces(); }
  std::size_t Size() const { return static_cast<std::size_t>(Modes()) * BlockSize(); }
  const CavityConfig &Cavity() const { return cfg_; }
  const Partition &Part() const { return part_; }

  // Transmission symbols on the right end of subdomain q and the left end of q + 1.
  Complex LambdaRightEnd(int mode_index, int q) const { return lam_l_[Idx(mode_index, q)]; }
  Complex LambdaLeftEnd(int mode_index, int q) const { return lam_r_[Idx(mode_index, q)]; }

  void Apply(const InterfaceState &in, InterfaceState &out) const;
  InterfaceState Apply(const InterfaceState &in) const;

  // Dense block of A for one mode (mode_index is 0-based), column-major by unit vectors.
  std::vector<Complex> ModeBlock(int mode_index) const;

  // Outgoing traces of one sweep driven only by the wall excitation.
  InterfaceState BuildRhs() const;

  // Subdomain solves with the excitation and the given interface data.
  std::vector<ModeField> Reconstruct(const InterfaceState &state) const;

private:
  std::size_t Idx(int mode_index, int q) const
  {
    return static_cast<std::size_t>(mode_index) * part_.Interfaces() + q;
  }
  void ApplyMode(int mode_index, const Complex *in, Complex *out) const;

  BoundaryCondition LeftCondition(int mode_index, int i, const InterfaceState *state) const;
  BoundaryCondition RightCondition(int mode_index, int i, const InterfaceState *state) const;

  CavityConfig cfg_;
  Partition part_;
  std::vector<Complex> lam_l_, lam_r_;
  // Per (mode, subdomain): 2x2 map from incoming (left, right) data to outgoing traces
  // (rl at the left neighbour interface, lr at the right neighbour interface).
  std::vector<std::array<Complex, 4>> transfer_;
};

// Validates specs against the partition and broadcasts a single spec to every interface.
std::vector<OperatorSpec> expand_specs(const std::vector<OperatorSpec> &specs, int interfaces);

namespace reference
{

// Serial A application that re-solves every subdomain through subdomain_solve.
InterfaceState apply_A_serial(const InterfaceState &state, const CavityConfig &cfg,
                              const Partition &part, const std::vector<OperatorSpec> &specs);

}  // namespace reference

InterfaceState apply_A(const InterfaceState &state, const CavityConfig &cfg,
                       const Partition &part, const std::vector<OperatorSpec> &specs);

// Outgoing traces of one sweep driven only by the wall excitation.
InterfaceState build_rhs(const CavityConfig &cfg, const Partition &part,
                         const std::vector<OperatorSpec> &specs);

struct FixedPointHistory
{
  std::vector<double> norms;       // ||d^n|| for n = 1..iterations
  std::vector<double> increments;  // ||d^n - d^{n-1}|| / ||d^n||
  InterfaceState state;
  int iterations = 0;
  bool converged = false;
};

// d^{n+1} = A d^n + b from d^0 = 0, stopping once the relative increment drops below tol.
// The observer sees (n, ||d^n||, increment).
FixedPointHistory fixed_point_run(const CavityConfig &cfg, const Partition &part,
                                  const std::vector<OperatorSpec> &specs, int n_iters,
                                  const std::function<void(int, double, double)> &observer = {},
                                  double tol = 1.0e-12);

// Final subdomain solves with the excitation and the converged interface data.
std::vector<ModeField> reconstruct_solution(const InterfaceState &state, const CavityConfig &cfg,
                                            const Partition &part,
                                            const std::vector<OperatorSpec> &specs);

// Analytic cavity solution for one mode, translated to [-l/2, l/2].
struct ClosedFormMode
{
  int m = 1;
  bool excited = false;
  Branch branch = Branch::Propagating;
  double kx = 0.0;
  double length = 1.0;
  WallKind wall = WallKind::Dirichlet;

  Complex Value(double x) const;
};

std::vector<ClosedFormMode> closed_form_solution(const CavityConfig &cfg);

// Relative L2 error over the cavity computed mode by mode with composite Gauss panels on
// the non-overlapping cells of the partition.
double error_l2(const std::vector<ModeField> &sol, const std::vector<ClosedFormMode> &ref,
                const CavityConfig &cfg, const Partition &part);

}  // namespace cavddm

#endif  // CAVDDM_SCHWARZ_HPP
