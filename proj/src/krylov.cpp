// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "cavddm/krylov.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <Eigen/Eigenvalues>
#include "cavddm/aberth.hpp"
#include "cavddm/error.hpp"
#include "cavddm/parallel.hpp"

namespace cavddm
{

namespace
{

Complex Dot(const std::vector<Complex> &x, const std::vector<Complex> &y)
{
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.size(); i++)
  {
    s += std::conj(x[i]) * y[i];
  }
  return s;
}

double Norm(const std::vector<Complex> &x)
{
  double s = 0.0;
  for (const auto &v : x)
  {
    s += std::norm(v);
  }
  return std::sqrt(s);
}

}  // namespace

Orthogonalization parse_orthogonalization(const std::string &text)
{
  if (text == "modified" || text == "mgs")
  {
    return Orthogonalization::Modified;
  }
  if (text == "classical" || text == "cgs")
  {
    return Orthogonalization::Classical;
  }
  throw std::invalid_argument("unknown orthogonalization '" + text + "'");
}

const char *orthogonalization_name(Orthogonalization o)
{
  return o == Orthogonalization::Modified ? "modified" : "classical";
}

std::pair<std::vector<Complex>, GmresReport> gmres(const LinearOperator &apply_op,
                                                   const std::vector<Complex> &b,
                                                   const GmresOptions &opt)
{
  if (!(opt.tol > 0.0))
  {
    throw std::invalid_argument("gmres: tolerance must be positive");
  }
  const std::size_t n = b.size();
  GmresReport rep;
  rep.ortho = opt.ortho;
  std::vector<Complex> x(n, 0.0);
  const double beta = Norm(b);
  if (!std::isfinite(beta))
  {
    throw std::invalid_argument("gmres: right-hand side is not finite");
  }
  if (beta == 0.0)
  {
    rep.residual_history = {0.0};
    rep.converged = true;
    return {x, rep};
  }
  rep.residual_history.push_back(1.0);
  if (1.0 <= opt.tol)
  {
    rep.converged = true;
    return {x, rep};
  }
  const int max_iter = opt.max_iter > 0 ? opt.max_iter : static_cast<int>(n);

  std::vector<std::vector<Complex>> v;
  v.reserve(std::min<std::size_t>(max_iter + 1, n + 1));
  v.emplace_back(n);
  for (std::size_t i = 0; i < n; i++)
  {
    v[0][i] = b[i] / beta;
  }
  // Column j of the Hessenberg matrix, already rotated.
  std::vector<std::vector<Complex>> h;
  std::vector<double> cs;
  std::vector<Complex> sn;
  std::vector<Complex> g{beta};
  std::vector<Complex> w, aw;

  int j = 0;
  for (; j < max_iter; j++)
  {
    // w = (I - A) v_j
    apply_op(v[j], aw);
    w.resize(n);
    for (std::size_t i = 0; i < n; i++)
    {
      w[i] = v[j][i] - aw[i];
    }
    std::vector<Complex> col(j + 2, 0.0);
    if (opt.ortho == Orthogonalization::Modified)
    {
      for (int i = 0; i <= j; i++)
      {
        col[i] = Dot(v[i], w);
        for (std::size_t r = 0; r < n; r++)
        {
          w[r] -= col[i] * v[i][r];
        }
      }
    }
    else
    {
      for (int i = 0; i <= j; i++)
      {
        col[i] = Dot(v[i], w);
      }
      for (int i = 0; i <= j; i++)
      {
        for (std::size_t r = 0; r < n; r++)
        {
          w[r] -= col[i] * v[i][r];
        }
      }
    }
    const double hnext = Norm(w);
    col[j + 1] = hnext;

    for (int i = 0; i < j; i++)
    {
      const Complex t = cs[i] * col[i] + sn[i] * col[i + 1];
      col[i + 1] = -std::conj(sn[i]) * col[i] + cs[i] * col[i + 1];
      col[i] = t;
    }
    const double den = std::hypot(std::abs(col[j]), std::abs(col[j + 1]));
    double c = 1.0;
    Complex s = 0.0;
    if (den > 0.0)
    {
      c = std::abs(col[j]) / den;
      const Complex sgn = std::abs(col[j]) > 0.0 ? col[j] / std::abs(col[j]) : Complex(1.0);
      s = sgn * std::conj(col[j + 1]) / den;
    }
    cs.push_back(c);
    sn.push_back(s);
    col[j] = c * col[j] + s * col[j + 1];
    col[j + 1] = 0.0;
    g.push_back(-std::conj(s) * g[j]);
    g[j] = c * g[j];
    h.push_back(std::move(col));

    const double rel = std::abs(g[j + 1]) / beta;
    rep.residual_history.push_back(rel);
    rep.iterations = j + 1;
    if (rel <= opt.tol)
    {
      rep.converged = true;
      j++;
      break;
    }
    if (hnext <= 1.0e-14 * beta || static_cast<std::size_t>(j + 1) >= n)
    {
      // Invariant subspace reached: the least-squares solution is exact.
      rep.breakdown = hnext <= 1.0e-14 * beta;
      rep.converged = rep.breakdown;
      j++;
      break;
    }
    v.emplace_back(n);
    for (std::size_t r = 0; r < n; r++)
    {
      v[j + 1][r] = w[r] / hnext;
    }
  }
  const int k = j;

  // Back substitution for the upper triangular k x k system.
  std::vector<Complex> y(k);
  for (int i = k - 1; i >= 0; i--)
  {
    Complex t = g[i];
    for (int l = i + 1; l < k; l++)
    {
      t -= h[l][i] * y[l];
    }
    y[i] = t / h[i][i];
  }
  for (int i = 0; i < k; i++)
  {
    for (std::size_t r = 0; r < n; r++)
    {
      x[r] += y[i] * v[i][r];
    }
  }

  if (opt.track_orthogonality)
  {
    double loss = 0.0;
    for (int i = 0; i < k; i++)
    {
      for (int l = i + 1; l < k; l++)
      {
        loss = std::max(loss, std::abs(Dot(v[i], v[l])));
      }
    }
    rep.orthogonality_loss = loss;
  }
  return {x, rep};
}

std::vector<Complex> charpoly_eigenvalues(const std::vector<Complex> &a, int n)
{
  if (n < 1 || n > 4 || a.size() != static_cast<std::size_t>(n) * n)
  {
    throw std::invalid_argument("charpoly_eigenvalues: need a 1..4 square block");
  }
  // Faddeev-LeVerrier: c_n = 1, M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
  auto at = [&](const std::vector<Complex> &m, int r, int c) { return m[c * n + r]; };
  std::vector<Complex> c(n + 1, 0.0);
  c[n] = 1.0;
  std::vector<Complex> mk(static_cast<std::size_t>(n) * n, 0.0), amk(mk.size());
  for (int k = 1; k <= n; k++)
  {
    for (int i = 0; i < n; i++)
    {
      mk[i * n + i] += c[n - k + 1];
    }
    for (int r = 0; r < n; r++)
    {
      for (int cc = 0; cc < n; cc++)
      {
        Complex s = 0.0;
        for (int l = 0; l < n; l++)
        {
          s += at(a, r, l) * at(mk, l, cc);
        }
        amk[cc * n + r] = s;
      }
    }
    Complex tr = 0.0;
    for (int i = 0; i < n; i++)
    {
      tr += amk[i * n + i];
    }
    c[n - k] = -tr / static_cast<double>(k);
    mk = amk;
  }
  AberthOptions opt;
  opt.tolerance = 1.0e-13;
  opt.floor_patience = 50;
  return aberth_roots_serial(c, opt).roots;
}

std::vector<Complex> dense_eigenvalues(const std::vector<Complex> &a, int n)
{
  if (a.size() != static_cast<std::size_t>(n) * n)
  {
    throw std::invalid_argument("dense_eigenvalues: size mismatch");
  }
  if (n == 0)
  {
    return {};
  }
  Eigen::Map<const Eigen::MatrixXcd> m(a.data(), n, n);
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(n);
  schur.setMaxIterations(30 * n);
  schur.compute(m, false);
  if (schur.info() != Eigen::Success)
  {
    if (n <= 4)
    {
      return charpoly_eigenvalues(a, n);
    }
    throw QRNoConvergence("shifted QR did not converge within 30 n sweeps");
  }
  std::vector<Complex> ev(n);
  for (int i = 0; i < n; i++)
  {
    ev[i] = schur.matrixT()(i, i);
  }
  return ev;
}

SpectrumResult spectrum(const SchwarzOperator &op)
{
  const int bs = op.BlockSize(), M = op.Modes();
  if (bs > 64)
  {
    throw std::invalid_argument("spectrum: per-mode block larger than 64");
  }
  SpectrumResult res;
  res.block_size = bs;
  res.eigenvalues.resize(static_cast<std::size_t>(M) * bs);
  res.mode_index.resize(res.eigenvalues.size());
  parallel_for(M, [&](int mi) {
    auto block = op.ModeBlock(mi);
    for (auto &v : block)
    {
      v = -v;
    }
    for (int i = 0; i < bs; i++)
    {
      block[static_cast<std::size_t>(i) * bs + i] += 1.0;
    }
    const auto ev = dense_eigenvalues(block, bs);
    for (int i = 0; i < bs; i++)
    {
      res.eigenvalues[static_cast<std::size_t>(mi) * bs + i] = ev[i];
      res.mode_index[static_cast<std::size_t>(mi) * bs + i] = mi + 1;
    }
  });
  return res;
}

SpectrumResult spectrum(const CavityConfig &cfg, const Partition &part,
                        const std::vector<OperatorSpec> &specs)
{
  return spectrum(SchwarzOperator(cfg, part, specs));
}

}  // namespace cavddm
