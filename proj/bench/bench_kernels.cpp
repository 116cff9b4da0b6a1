// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

// Serial reference versus OpenMP kernels: interface operator application and
// simultaneous polynomial root finding.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <numbers>
#include <random>
#include <vector>
#include "cavddm/aberth.hpp"
#include "cavddm/bigfloat.hpp"
#include "cavddm/cavity.hpp"
#include "cavddm/krylov.hpp"
#include "cavddm/rational.hpp"
#include "cavddm/schwarz.hpp"

using namespace cavddm;

namespace
{

// Default cavity (l / lambda ~ 25) with the requested subdomain count.
struct Problem
{
  CavityConfig cfg;
  Partition part;
  std::vector<OperatorSpec> specs;
  InterfaceState state;

  explicit Problem(int d)
  {
    cfg.length = 1.0;
    cfg.height = 0.5;
    cfg.k = 157.085;
    cfg.excitation_modes = 50;
    cfg.max_modes = 100;
    part = Partition::uniform(cfg, d);
    specs = {parse_operator_spec("pade-c:32")};
    std::mt19937_64 rng(7);
    std::normal_distribution<double> nd;
    state.resize(static_cast<std::size_t>(cfg.max_modes) * 2 * (d - 1));
    for (auto &v : state)
    {
      v = {nd(rng), nd(rng)};
    }
  }
};

void BM_ApplyASerialReference(benchmark::State &st)
{
  const Problem p(static_cast<int>(st.range(0)));
  for (auto _ : st)
  {
    benchmark::DoNotOptimize(reference::apply_A_serial(p.state, p.cfg, p.part, p.specs));
  }
}
BENCHMARK(BM_ApplyASerialReference)->Arg(2)->Arg(8)->Unit(benchmark::kMicrosecond);

void BM_ApplyAOpenMP(benchmark::State &st)
{
  const Problem p(static_cast<int>(st.range(0)));
  for (auto _ : st)
  {
    benchmark::DoNotOptimize(apply_A(p.state, p.cfg, p.part, p.specs));
  }
}
BENCHMARK(BM_ApplyAOpenMP)->Arg(2)->Arg(8)->Unit(benchmark::kMicrosecond);

// Operator reuse as inside GMRES: one thread versus all threads.
void BM_SchwarzApply(benchmark::State &st)
{
  const Problem p(8);
  const SchwarzOperator op(p.cfg, p.part, p.specs);
  InterfaceState out;
  const int saved = omp_get_max_threads();
  omp_set_num_threads(static_cast<int>(st.range(0)) == 0 ? saved : 1);
  for (auto _ : st)
  {
    op.Apply(p.state, out);
    benchmark::DoNotOptimize(out.data());
  }
  omp_set_num_threads(saved);
  st.SetLabel(st.range(0) == 0 ? "all threads" : "one thread");
}
BENCHMARK(BM_SchwarzApply)->Arg(1)->Arg(0)->Unit(benchmark::kMicrosecond);

// Denominator of the depth-2N continued fraction of z cot z.
std::vector<BigComplex> Denominator(int n, mpfr_prec_t bits)
{
  const auto [num, den] = cfrac_rational(cot_rule(), 2 * n);
  std::vector<BigComplex> c;
  for (const auto &q : den.Coefficients())
  {
    c.emplace_back(BigFloat(q, bits), BigFloat(0.0, bits));
  }
  return c;
}

void BM_AberthSerial(benchmark::State &st)
{
  const int n = static_cast<int>(st.range(0));
  const auto c = Denominator(n, 8 * n + 64);
  for (auto _ : st)
  {
    benchmark::DoNotOptimize(aberth_roots_serial(c));
  }
}
BENCHMARK(BM_AberthSerial)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_AberthOpenMP(benchmark::State &st)
{
  const int n = static_cast<int>(st.range(0));
  const auto c = Denominator(n, 8 * n + 64);
  for (auto _ : st)
  {
    benchmark::DoNotOptimize(aberth_roots(c));
  }
}
BENCHMARK(BM_AberthOpenMP)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_PadeCoefficients(benchmark::State &st)
{
  for (auto _ : st)
  {
    benchmark::DoNotOptimize(pade_cot_coefficients(static_cast<int>(st.range(0))));
  }
}
BENCHMARK(BM_PadeCoefficients)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_Spectrum(benchmark::State &st)
{
  const Problem p(static_cast<int>(st.range(0)));
  const SchwarzOperator op(p.cfg, p.part, p.specs);
  for (auto _ : st)
  {
    benchmark::DoNotOptimize(spectrum(op));
  }
}
BENCHMARK(BM_Spectrum)->Arg(2)->Arg(8)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
