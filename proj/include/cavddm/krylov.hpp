// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CAVDDM_KRYLOV_HPP
#define CAVDDM_KRYLOV_HPP

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>
#include "cavddm/schwarz.hpp"

namespace cavddm
{

enum class Orthogonalization
{
  Classical,
  Modified
};

Orthogonalization parse_orthogonalization(const std::string &text);
const char *orthogonalization_name(Orthogonalization o);

// y = A x for the operator A of the system (I - A) x = b.
using LinearOperator = std::function<void(const std::vector<Complex> &, std::vector<Complex> &)>;

struct GmresOptions
{
  double tol = 1.0e-6;
  Orthogonalization ortho = Orthogonalization::Modified;
  // 0 means the system dimension.
  int max_iter = 0;
  // Computes max |<v_i, v_j>| over the Krylov basis after the solve.
  bool track_orthogonality = false;
};

struct GmresReport
{
  int iterations = 0;
  std::vector<double> residual_history;  // ||r_i|| / ||r_0||, starting with 1
  bool converged = false;
  bool breakdown = false;
  Orthogonalization ortho = Orthogonalization::Modified;
  double orthogonality_loss = 0.0;
};

// Unrestarted GMRES on (I - A) x = b from x0 = 0 with Givens least squares. When the
// iteration cap is reached the best iterate is returned with converged = false.
std::pair<std::vector<Complex>, GmresReport> gmres(const LinearOperator &apply_op,
                                                   const std::vector<Complex> &b,
                                                   const GmresOptions &opt = {});

struct SpectrumResult
{
  std::vector<Complex> eigenvalues;  // mode-major, block_size per mode
  std::vector<int> mode_index;       // 1-based mode of each eigenvalue
  int block_size = 0;
};

// Eigenvalues of a dense column-major n x n matrix: Hessenberg reduction and shifted QR
// with a 30 n iteration cap; blocks of size <= 4 fall back to the characteristic
// polynomial when QR stalls.
std::vector<Complex> dense_eigenvalues(const std::vector<Complex> &a, int n);

// Characteristic polynomial roots (Faddeev-LeVerrier + Aberth), for n <= 4.
std::vector<Complex> charpoly_eigenvalues(const std::vector<Complex> &a, int n);

// Eigenvalues of F = I - A, one dense block per mode.
SpectrumResult spectrum(const CavityConfig &cfg, const Partition &part,
                        const std::vector<OperatorSpec> &specs);
SpectrumResult spectrum(const SchwarzOperator &op);

}  // namespace cavddm

#endif  // CAVDDM_KRYLOV_HPP
