// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CAVDDM_CONVERGENCE_HPP
#define CAVDDM_CONVERGENCE_HPP

#include <complex>
#include <vector>
#include "cavddm/symbols.hpp"

namespace cavddm
{

//
// Per-mode contraction factor of the two-subdomain Schwarz iteration,
// rho^2 = (n01 n10) / (d01 d10).
//
struct RadiusResult
{
  std::complex<double> rho_squared;
  double rho_abs = 0.0;
  std::complex<double> n01, n10;
  std::complex<double> d01, d10;
  Branch branch = Branch::Propagating;
};

// lambda01 acts on the boundary of the subdomain of length l01 and approximates the
// exact symbol of the opposite subdomain (length l10); symmetrically for lambda10.
RadiusResult radius_nonoverlap(SymbolValue lambda01, SymbolValue lambda10, double s, double k,
                               double l01, double l10);

// Overlapping variant: l01, l10 are the extended lengths, l01_prime, l10_prime the
// reduced ones (l - l' = 2 delta).
RadiusResult radius_overlap(SymbolValue lambda01, SymbolValue lambda10, double s, double k,
                            double l01, double l10, double l01_prime, double l10_prime);

// True for the plain cavity DtN, whose mismatch vanishes identically. Its double
// value can coincide with the unbounded symbol on evanescent modes, so callers zero the
// radius explicitly instead of relying on cancellation.
bool is_exact_cavity_dtn(const OperatorSpec &spec);

// Zeroes the mismatch terms of r.
void clear_mismatch(RadiusResult &r);

// Convenience: evaluates both symbols from one operator spec before calling radius_nonoverlap.
RadiusResult radius_for_spec(const OperatorSpec &spec, double s, double k, double l01, double l10);

// Largest rho_abs in a mode sweep.
double max_over_modes(const std::vector<RadiusResult> &rows);

// Cavity symbol minus unbounded symbol, exponentially small for evanescent modes.
std::complex<double> symbol_gap(double s, double k, double l);

// Minimum Mittag-Leffler pole count ceil(2 l / wavelength) that resolves every
// propagating-mode pole of a segment of length l.
int n_min_pole(double l, double wavelength);

}  // namespace cavddm

#endif  // CAVDDM_CONVERGENCE_HPP
