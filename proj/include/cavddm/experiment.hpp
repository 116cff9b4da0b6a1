// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CAVDDM_EXPERIMENT_HPP
#define CAVDDM_EXPERIMENT_HPP

#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <vector>
#include "cavddm/cavity.hpp"
#include "cavddm/krylov.hpp"
#include "cavddm/symbols.hpp"

namespace cavddm
{

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

//
// Parameters of one experiment. The wavenumber is k when given, otherwise
// 2 pi l_over_lambda / length. K < 0 selects twice the propagating count and M <= 0
// selects 2 K.
//
struct ExperimentConfig
{
  static constexpr double kDefaultRatio = 157.085 / (2.0 * std::numbers::pi);

  double length = 1.0;
  double height = 0.5;
  std::optional<double> k;
  double l_over_lambda = kDefaultRatio;
  int subdomains = 2;
  int excitation_modes = 50;
  int max_modes = 100;
  WallKind wall = WallKind::Dirichlet;
  std::vector<std::string> operators{"pade-c:32"};
  double tol = 1.0e-6;
  Orthogonalization ortho = Orthogonalization::Modified;
  int max_iter = 0;
  double delta = 0.0;
  std::string output;

  double Wavenumber() const;
  double Wavelength() const;
  CavityConfig Cavity() const;
  Partition MakePartition() const;
  std::vector<OperatorSpec> Specs() const;
  void Validate() const;

  // Sets one field from its key = value form; throws std::invalid_argument on bad input.
  void Set(const std::string &key, const std::string &value);
  static const std::vector<std::string> &Keys();
};

// Reads "key = value" lines with '#' comments into cfg.
void load_config_file(ExperimentConfig &cfg, const std::string &path);

// Splits a comma-separated list, trimming blanks and dropping empty items.
std::vector<std::string> split_list(const std::string &text);

struct RunOutcome
{
  std::string op;
  int subdomains = 0;
  GmresReport report;
  double error_l2 = 0.0;
};

// GMRES on (I - A) d = b for one operator assignment and the L2 error of the
// reconstructed field against the closed-form cavity solution.
RunOutcome run_gmres(const ExperimentConfig &cfg, const std::vector<OperatorSpec> &specs,
                     bool track_orthogonality = false, bool with_error = true);

// Subcommands. Each writes CSV with a header row to out; diagnostics go to err.
int cmd_pade_table(const std::vector<int> &n_list, int precision_bits, const std::string &table_path,
                   std::ostream &out, std::ostream &err);
int cmd_symbols(const ExperimentConfig &cfg, double s_over_k_max, int points, std::ostream &out);
int cmd_radius(const ExperimentConfig &cfg, std::ostream &out);
int cmd_run(const ExperimentConfig &cfg, std::ostream &out, std::ostream &summary);
int cmd_sweep_d(const ExperimentConfig &cfg, const std::vector<int> &d_list, std::ostream &out,
                std::ostream &err);
int cmd_sweep_k(const ExperimentConfig &cfg, const std::vector<double> &ratio_list,
                std::ostream &out, std::ostream &err);
int cmd_spectrum(const ExperimentConfig &cfg, std::ostream &out);
int cmd_nmin(const ExperimentConfig &cfg, std::ostream &out);

}  // namespace cavddm

#endif  // CAVDDM_EXPERIMENT_HPP
