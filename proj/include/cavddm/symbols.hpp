// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CAVDDM_SYMBOLS_HPP
#define CAVDDM_SYMBOLS_HPP

#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include "cavddm/rational.hpp"

namespace cavddm
{

using SymbolValue = std::complex<double>;

// Sine mode sin(s y) of a cavity of height h, s = m pi / h with m >= 1.
struct ModeFrequency
{
  int m = 1;
  double s = 0.0;
};

enum class OperatorKind
{
  DtnCavity,
  DtnCavityNeumann,
  DtnUnbounded,
  Oo0Cavity,
  Oo0Unbounded,
  MittagLefflerCavity,
  PadeCavity,
  PadeUnbounded
};

struct Mixing
{
  double epsilon = 0.5;
  int m_terms = 1;
  friend bool operator==(const Mixing &, const Mixing &) = default;
};

//
// Transmission operator description. Text form: kind[:N][+r:chi][+m:eps:M][+rot:theta],
// e.g. "pade-c:32", "oo0-c+r:0.1", "ml-c:64+m:0.5:4", "pade-u:8+rot:0.3".
//
struct OperatorSpec
{
  static constexpr double kDefaultRotation = std::numbers::pi / 4.0;

  OperatorKind kind = OperatorKind::DtnCavity;
  int n_terms = 0;
  double chi = 0.0;
  std::optional<Mixing> mixing;
  double branch_rotation = kDefaultRotation;

  // Throws std::invalid_argument on a violated invariant.
  void Validate() const;
  std::string ToString() const;
  friend bool operator==(const OperatorSpec &, const OperatorSpec &) = default;
};

OperatorSpec parse_operator_spec(const std::string &text);

// Evanescence factor: -j sqrt(k^2 - s^2) for s < k, 0 at s = k, sqrt(s^2 - k^2) for s > k.
std::complex<double> alpha(double s, double k);

// Exact Dirichlet-to-Neumann symbol of a cavity segment of length l closed by a
// Dirichlet wall.
SymbolValue dtn_cavity_dirichlet(double s, double k, double l);

// Same for a Neumann (hard) wall.
SymbolValue dtn_cavity_neumann(double s, double k, double l);

// Exact symbol seen from the far side of an overlap; identical to the Dirichlet
// symbol evaluated at the reduced length.
SymbolValue dtn_cavity_overlap(double s, double k, double l_prime);

// Exact symbol of a semi-infinite waveguide (outgoing / decaying branch).
SymbolValue dtn_unbounded(double s, double k);

// k cot(k l), the constant Taylor term of the cavity symbol.
SymbolValue oo0_cavity(double k, double l);

// Truncated Mittag-Leffler expansion of the cavity symbol with N poles.
SymbolValue ml_symbol(double s, double k, double l, int n_terms);

SymbolValue pade_cavity_symbol(double s, double k, double l, const PadeCoefficients &coeffs);

// Rotated-branch N-term rational approximation of -j k sqrt(1 - s^2/k^2).
SymbolValue pade_unbounded_symbol(double s, double k, int n_terms,
                                  double rotation = OperatorSpec::kDefaultRotation);

// Dispatch on the operator kind, then add regularization and mixing.
SymbolValue apply_spec(const OperatorSpec &spec, double s, double k, double l);

enum class Branch
{
  Propagating,
  Grazing,
  Evanescent
};

// Branch selection with the relative tolerance used by every three-branch formula.
Branch classify_branch(double s, double k);
const char *branch_name(Branch b);

}  // namespace cavddm

#endif  // CAVDDM_SYMBOLS_HPP
