// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "cavddm/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include "cavddm/convergence.hpp"
#include "cavddm/error.hpp"
#include "cavddm/format.hpp"
#include "cavddm/parallel.hpp"
#include "cavddm/rational.hpp"
#include "cavddm/schwarz.hpp"

namespace cavddm
{

namespace
{

std::string Trim(const std::string &s)
{
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos)
  {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double ParseDouble(const std::string &key, const std::string &value)
{
  std::size_t pos = 0;
  double v = 0.0;
  try
  {
    v = std::stod(value, &pos);
  }
  catch (const std::exception &)
  {
    pos = 0;
  }
  if (pos == 0 || pos != value.size() || !std::isfinite(v))
  {
    throw std::invalid_argument("invalid number for '" + key + "': '" + value + "'");
  }
  return v;
}

int ParseInt(const std::string &key, const std::string &value)
{
  std::size_t pos = 0;
  long v = 0;
  try
  {
    v = std::stol(value, &pos);
  }
  catch (const std::exception &)
  {
    pos = 0;
  }
  if (pos == 0 || pos != value.size() || v < -1000000000L || v > 1000000000L)
  {
    throw std::invalid_argument("invalid integer for '" + key + "': '" + value + "'");
  }
  return static_cast<int>(v);
}

std::string SpecsName(const std::vector<OperatorSpec> &specs)
{
  std::string name;
  for (std::size_t i = 0; i < specs.size(); i++)
  {
    name += (i ? ";" : "") + specs[i].ToString();
  }
  return name;
}

void WriteIterations(std::ostream &out, const std::string &lead, const std::string &op,
                     const std::optional<RunOutcome> &r)
{
  out << lead << ',' << op << ',';
  if (r)
  {
    out << r->report.iterations << ',' << (r->report.converged ? 1 : 0) << '\n';
  }
  else
  {
    out << "NA,NA\n";
  }
}

struct SweepCell
{
  ExperimentConfig cfg;
  std::string op;
  std::optional<RunOutcome> result;
  std::string warning;
};

void RunCells(std::vector<SweepCell> &cells)
{
  parallel_for(static_cast<int>(cells.size()), [&](int i) {
    auto &c = cells[i];
    try
    {
      auto r = run_gmres(c.cfg, {parse_operator_spec(c.op)}, false, false);
      if (r.report.converged)
      {
        c.result = std::move(r);
      }
      else
      {
        c.warning = "no convergence within " + std::to_string(r.report.iterations) + " iterations";
      }
    }
    catch (const std::exception &e)
    {
      c.warning = e.what();
    }
  });
}

}  // namespace

double ExperimentConfig::Wavenumber() const
{
  return k ? *k : 2.0 * std::numbers::pi * l_over_lambda / length;
}

double ExperimentConfig::Wavelength() const
{
  return 2.0 * std::numbers::pi / Wavenumber();
}

CavityConfig ExperimentConfig::Cavity() const
{
  CavityConfig c;
  c.length = length;
  c.height = height;
  c.k = Wavenumber();
  c.wall = wall;
  c.excitation_modes = excitation_modes < 0 ? 2 * c.PropagatingCount() : excitation_modes;
  c.max_modes = max_modes > 0 ? max_modes : std::max(2 * c.excitation_modes, 1);
  c.Validate();
  return c;
}

Partition ExperimentConfig::MakePartition() const
{
  auto p = Partition::uniform(Cavity(), subdomains, delta);
  p.Validate();
  return p;
}

std::vector<OperatorSpec> ExperimentConfig::Specs() const
{
  std::vector<OperatorSpec> specs;
  for (const auto &s : operators)
  {
    specs.push_back(parse_operator_spec(s));
  }
  return specs;
}

void ExperimentConfig::Validate() const
{
  if (!(length > 0.0 && height > 0.0))
  {
    throw std::invalid_argument("length and height must be positive");
  }
  if (!(Wavenumber() > 0.0) || !std::isfinite(Wavenumber()))
  {
    throw std::invalid_argument("wavenumber must be positive");
  }
  if (subdomains < 2)
  {
    throw std::invalid_argument("D must be at least 2");
  }
  if (!(tol > 0.0))
  {
    throw std::invalid_argument("tol must be positive");
  }
  if (!(delta >= 0.0))
  {
    throw std::invalid_argument("delta must be non-negative");
  }
  if (max_iter < 0)
  {
    throw std::invalid_argument("max_iter must be non-negative");
  }
  if (operators.empty())
  {
    throw std::invalid_argument("at least one operator is required");
  }
  Specs();
}

const std::vector<std::string> &ExperimentConfig::Keys()
{
  static const std::vector<std::string> keys{"length", "height",   "k",     "l_over_lambda",
                                             "D",      "K",        "M",     "wall",
                                             "operators", "tol",   "ortho", "max_iter",
                                             "delta",  "output"};
  return keys;
}

void ExperimentConfig::Set(const std::string &key, const std::string &raw)
{
  const std::string value = Trim(raw);
  if (key == "length")
  {
    length = ParseDouble(key, value);
  }
  else if (key == "height")
  {
    height = ParseDouble(key, value);
  }
  else if (key == "k")
  {
    k = ParseDouble(key, value);
  }
  else if (key == "l_over_lambda")
  {
    l_over_lambda = ParseDouble(key, value);
    k.reset();
  }
  else if (key == "D")
  {
    subdomains = ParseInt(key, value);
  }
  else if (key == "K")
  {
    excitation_modes = value == "auto" ? -1 : ParseInt(key, value);
  }
  else if (key == "M")
  {
    max_modes = value == "auto" ? 0 : ParseInt(key, value);
  }
  else if (key == "wall")
  {
    wall = parse_wall_kind(value);
  }
  else if (key == "operators")
  {
    operators = split_list(value);
  }
  else if (key == "tol")
  {
    tol = ParseDouble(key, value);
  }
  else if (key == "ortho")
  {
    ortho = parse_orthogonalization(value);
  }
  else if (key == "max_iter")
  {
    max_iter = ParseInt(key, value);
  }
  else if (key == "delta")
  {
    delta = ParseDouble(key, value);
  }
  else if (key == "output")
  {
    output = value;
  }
  else
  {
    throw std::invalid_argument("unknown config key '" + key + "'");
  }
}

void load_config_file(ExperimentConfig &cfg, const std::string &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw std::invalid_argument("cannot open config file '" + path + "'");
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line))
  {
    lineno++;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
    {
      line.erase(hash);
    }
    line = Trim(line);
    if (line.empty())
    {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
    {
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key = value");
    }
    cfg.Set(Trim(line.substr(0, eq)), line.substr(eq + 1));
  }
}

std::vector<std::string> split_list(const std::string &text)
{
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    item = Trim(item);
    if (!item.empty())
    {
      items.push_back(item);
    }
  }
  return items;
}

RunOutcome run_gmres(const ExperimentConfig &cfg, const std::vector<OperatorSpec> &specs,
                     bool track_orthogonality, bool with_error)
{
  const auto cav = cfg.Cavity();
  const auto part = cfg.MakePartition();
  const SchwarzOperator op(cav, part, specs);
  const auto b = op.BuildRhs();
  GmresOptions opt;
  opt.tol = cfg.tol;
  opt.ortho = cfg.ortho;
  opt.max_iter = cfg.max_iter;
  opt.track_orthogonality = track_orthogonality;
  auto [x, rep] = gmres([&](const std::vector<Complex> &in, std::vector<Complex> &out) { op.Apply(in, out); },
                        b, opt);
  RunOutcome r;
  r.op = SpecsName(specs);
  r.subdomains = part.Subdomains();
  r.report = std::move(rep);
  r.error_l2 = with_error ? error_l2(op.Reconstruct(x), closed_form_solution(cav), cav, part)
                          : std::nan("");
  return r;
}

int cmd_pade_table(const std::vector<int> &n_list, int precision_bits, const std::string &table_path,
                   std::ostream &out, std::ostream &err)
{
  if (n_list.empty())
  {
    err << "pade-table: empty N list\n";
    return kExitUsage;
  }
  std::vector<PadeCoefficients> rows;
  for (int n : n_list)
  {
    if (n < 1)
    {
      err << "pade-table: N must be positive\n";
      return kExitUsage;
    }
    rows.push_back(precision_bits > 0 ? pade_cot_coefficients(n, precision_bits)
                                      : *PadeCache::Global().Get(n));
  }
  out << "N,i,c0,a,b,sqrt_b,pole_error\n";
  for (const auto &r : rows)
  {
    for (int i = 0; i < r.n_terms; i++)
    {
      const double sb = std::sqrt(r.b[i]);
      out << r.n_terms << ',' << i << ',' << format_real(r.c0) << ',' << format_real(r.a[i]) << ','
          << format_real(r.b[i]) << ',' << format_real(sb) << ','
          << format_real(std::abs(sb - (i + 1) * std::numbers::pi)) << '\n';
    }
  }
  if (!table_path.empty())
  {
    write_pade_table(table_path, rows);
  }
  return kExitOk;
}

int cmd_symbols(const ExperimentConfig &cfg, double s_over_k_max, int points, std::ostream &out)
{
  if (points < 2 || !(s_over_k_max > 0.0))
  {
    throw std::invalid_argument("symbols: need at least 2 points and a positive s/k range");
  }
  const double k = cfg.Wavenumber();
  const double l = cfg.MakePartition().WallDistanceRight(0);
  std::vector<double> grid;
  for (int i = 0; i < points; i++)
  {
    grid.push_back(k * s_over_k_max * i / (points - 1));
  }
  if (s_over_k_max >= 1.0 && std::find(grid.begin(), grid.end(), k) == grid.end())
  {
    grid.push_back(k);
    std::sort(grid.begin(), grid.end());
  }
  out << "s,s_over_k,re,im,branch,operator\n";
  for (const auto &spec : cfg.Specs())
  {
    const std::string name = spec.ToString();
    for (double s : grid)
    {
      out << format_real(s) << ',' << format_real(s / k) << ',';
      try
      {
        const auto v = apply_spec(spec, s, k, l);
        out << format_real(v.real()) << ',' << format_real(v.imag());
      }
      catch (const NumericalError &)
      {
        out << "NA,NA";
      }
      out << ',' << branch_name(classify_branch(s, k)) << ',' << name << '\n';
    }
  }
  return kExitOk;
}

int cmd_radius(const ExperimentConfig &cfg, std::ostream &out)
{
  const auto cav = cfg.Cavity();
  const auto part = cfg.MakePartition();
  const double half = 0.5 * cav.length;
  const double l01 = part.Right(0) + half, l10 = half - part.Left(1);
  const double l01p = part.WallDistanceLeft(0), l10p = part.WallDistanceRight(0);
  out << "s,s_over_k,rho_abs,branch,operator\n";
  for (const auto &spec : cfg.Specs())
  {
    const std::string name = spec.ToString();
    for (const auto &mode : mode_set(cav))
    {
      out << format_real(mode.s) << ',' << format_real(mode.s / cav.k) << ',';
      try
      {
        const auto lam01 = apply_spec(spec, mode.s, cav.k, l10p);
        const auto lam10 = apply_spec(spec, mode.s, cav.k, l01p);
        auto r = part.overlap_delta > 0.0
                     ? radius_overlap(lam01, lam10, mode.s, cav.k, l01, l10, l01p, l10p)
                     : radius_nonoverlap(lam01, lam10, mode.s, cav.k, l01, l10);
        if (is_exact_cavity_dtn(spec))
        {
          clear_mismatch(r);
        }
        out << format_real(r.rho_abs);
      }
      catch (const NumericalError &)
      {
        out << "NA";
      }
      out << ',' << branch_name(classify_branch(mode.s, cav.k)) << ',' << name << '\n';
    }
  }
  return kExitOk;
}

int cmd_run(const ExperimentConfig &cfg, std::ostream &out, std::ostream &summary)
{
  std::vector<RunOutcome> runs;
  for (const auto &spec : cfg.Specs())
  {
    runs.push_back(run_gmres(cfg, {spec}));
  }
  out << "iter,relative_residual,operator\n";
  for (const auto &r : runs)
  {
    for (std::size_t i = 0; i < r.report.residual_history.size(); i++)
    {
      out << i << ',' << format_real(r.report.residual_history[i]) << ',' << r.op << '\n';
    }
  }
  summary << "operator,D,iterations,converged,error_l2\n";
  bool all = true;
  for (const auto &r : runs)
  {
    summary << r.op << ',' << r.subdomains << ',' << r.report.iterations << ','
            << (r.report.converged ? 1 : 0) << ',' << format_real(r.error_l2) << '\n';
    all = all && r.report.converged;
  }
  return all ? kExitOk : kExitNumerical;
}

int cmd_sweep_d(const ExperimentConfig &cfg, const std::vector<int> &d_list, std::ostream &out,
                std::ostream &err)
{
  if (d_list.empty())
  {
    err << "sweep-d: empty D list\n";
    return kExitUsage;
  }
  std::vector<SweepCell> cells;
  for (int d : d_list)
  {
    for (const auto &op : cfg.operators)
    {
      SweepCell c{cfg, op, std::nullopt, {}};
      c.cfg.subdomains = d;
      cells.push_back(std::move(c));
    }
  }
  RunCells(cells);
  out << "D,operator,iterations,converged\n";
  for (const auto &c : cells)
  {
    if (!c.warning.empty())
    {
      err << "warning: D=" << c.cfg.subdomains << " " << c.op << ": " << c.warning << '\n';
    }
    WriteIterations(out, std::to_string(c.cfg.subdomains), c.op, c.result);
  }
  return kExitOk;
}

int cmd_sweep_k(const ExperimentConfig &cfg, const std::vector<double> &ratio_list,
                std::ostream &out, std::ostream &err)
{
  if (ratio_list.empty())
  {
    err << "sweep-k: empty ratio list\n";
    return kExitUsage;
  }
  std::vector<SweepCell> cells;
  for (double r : ratio_list)
  {
    for (const auto &op : cfg.operators)
    {
      SweepCell c{cfg, op, std::nullopt, {}};
      c.cfg.k.reset();
      c.cfg.l_over_lambda = r;
      c.cfg.excitation_modes = -1;
      c.cfg.max_modes = 0;
      cells.push_back(std::move(c));
    }
  }
  RunCells(cells);
  out << "l_over_lambda,operator,iterations,converged\n";
  for (const auto &c : cells)
  {
    if (!c.warning.empty())
    {
      err << "warning: l_over_lambda=" << format_short(c.cfg.l_over_lambda) << " " << c.op << ": "
          << c.warning << '\n';
    }
    WriteIterations(out, format_real(c.cfg.l_over_lambda), c.op, c.result);
  }
  return kExitOk;
}

int cmd_spectrum(const ExperimentConfig &cfg, std::ostream &out)
{
  const auto cav = cfg.Cavity();
  const auto part = cfg.MakePartition();
  out << "mode_index,re,im,operator,D\n";
  for (const auto &spec : cfg.Specs())
  {
    const auto res = spectrum(cav, part, {spec});
    const std::string name = spec.ToString();
    for (std::size_t i = 0; i < res.eigenvalues.size(); i++)
    {
      out << res.mode_index[i] << ',' << format_real(res.eigenvalues[i].real()) << ','
          << format_real(res.eigenvalues[i].imag()) << ',' << name << ',' << part.Subdomains()
          << '\n';
    }
  }
  return kExitOk;
}

int cmd_nmin(const ExperimentConfig &cfg, std::ostream &out)
{
  const auto part = cfg.MakePartition();
  double lmax = 0.0;
  for (int q = 0; q < part.Interfaces(); q++)
  {
    lmax = std::max({lmax, part.WallDistanceRight(q), part.WallDistanceLeft(q)});
  }
  out << "D,l_max,wavelength,n_min\n";
  out << part.Subdomains() << ',' << format_real(lmax) << ',' << format_real(cfg.Wavelength()) << ','
      << n_min_pole(lmax, cfg.Wavelength()) << '\n';
  return kExitOk;
}

}  // namespace cavddm
