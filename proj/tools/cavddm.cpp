// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>
#include <CLI11.hpp>
#include "cavddm/error.hpp"
#include "cavddm/experiment.hpp"

namespace
{

struct CommonOptions
{
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option *> options;
};

void AddCommon(CLI::App *app, CommonOptions &opts)
{
  static const std::vector<std::pair<std::string, std::string>> flags{
      {"length", "cavity length"},
      {"height", "cavity height"},
      {"k", "wavenumber (overrides --l-over-lambda)"},
      {"l_over_lambda", "length-to-wavelength ratio"},
      {"D", "number of subdomains"},
      {"K", "excited modes, or 'auto' for twice the propagating count"},
      {"M", "retained modes, or 'auto' for 2 K"},
      {"wall", "right wall: dirichlet or neumann"},
      {"operators", "comma-separated operator specs, e.g. pade-c:32,oo0-u"},
      {"tol", "GMRES relative tolerance"},
      {"ortho", "Gram-Schmidt variant: modified or classical"},
      {"max_iter", "GMRES iteration cap (0 = system size)"},
      {"delta", "overlap half-width"},
      {"output", "CSV output path (default stdout)"},
  };
  app->add_option("--config", opts.config_path, "key = value config file")->check(CLI::ExistingFile);
  for (const auto &[key, help] : flags)
  {
    std::string name = key;
    std::replace(name.begin(), name.end(), '_', '-');
    name = key.size() == 1 ? "-" + name : "--" + name;
    opts.options[key] = app->add_option(name, opts.values[key], help);
  }
}

cavddm::ExperimentConfig BuildConfig(const CommonOptions &opts)
{
  cavddm::ExperimentConfig cfg;
  if (!opts.config_path.empty())
  {
    cavddm::load_config_file(cfg, opts.config_path);
  }
  for (const auto &key : cavddm::ExperimentConfig::Keys())
  {
    const auto it = opts.options.find(key);
    if (it != opts.options.end() && it->second->count() > 0)
    {
      cfg.Set(key, opts.values.at(key));
    }
  }
  cfg.Validate();
  return cfg;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Optimized Schwarz transmission operators for the Helmholtz cavity"};
  app.require_subcommand(1);

  std::map<std::string, CommonOptions> common;
  auto sub = [&](const std::string &name, const std::string &help) {
    auto *s = app.add_subcommand(name, help);
    AddCommon(s, common[name]);
    return s;
  };

  std::vector<int> n_list;
  int precision = 0;
  std::string table_path;
  auto *pade = app.add_subcommand("pade-table", "Pade coefficients of z cot z per N");
  pade->add_option("--n", n_list, "comma-separated term counts")->delimiter(',');
  pade->add_option("--precision", precision, "working precision in bits (0 = adaptive)");
  pade->add_option("--table", table_path, "write the persistent coefficient table here");
  std::string pade_output;
  pade->add_option("--output", pade_output, "CSV output path (default stdout)");

  double s_max = 2.0;
  int points = 201;
  auto *symbols = sub("symbols", "transmission symbols on an s grid");
  symbols->add_option("--s-over-k-max", s_max, "upper end of the s/k grid");
  symbols->add_option("--points", points, "grid points");

  auto *radius = sub("radius", "convergence radius per cavity mode");
  auto *run = sub("run", "GMRES residual history and solution error");
  std::vector<int> d_list;
  auto *sweep_d = sub("sweep-d", "GMRES iterations versus number of subdomains");
  sweep_d->add_option("--d-list", d_list, "comma-separated subdomain counts")->delimiter(',');
  std::vector<double> ratios;
  auto *sweep_k = sub("sweep-k", "GMRES iterations versus length-to-wavelength ratio");
  sweep_k->add_option("--ratios", ratios, "comma-separated l/lambda values")->delimiter(',');
  auto *spec = sub("spectrum", "eigenvalues of I - A per mode");
  auto *nmin = sub("nmin", "minimum Mittag-Leffler terms to cover every pole");

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::CallForHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::CallForAllHelp &e)
  {
    return app.exit(e);
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e);
    return cavddm::kExitUsage;
  }

  try
  {
    auto *active = app.get_subcommands().front();
    const std::string name = active->get_name();
    std::string output_path = pade_output;
    cavddm::ExperimentConfig cfg;
    if (name != "pade-table")
    {
      cfg = BuildConfig(common.at(name));
      output_path = cfg.output;
    }
    std::ofstream file;
    if (!output_path.empty())
    {
      file.open(output_path);
      if (!file)
      {
        std::cerr << "cannot open output file '" << output_path << "'\n";
        return cavddm::kExitUsage;
      }
    }
    std::ostream &out = output_path.empty() ? std::cout : file;

    if (active == pade)
    {
      return cavddm::cmd_pade_table(n_list, precision, table_path, out, std::cerr);
    }
    if (active == symbols)
    {
      return cavddm::cmd_symbols(cfg, s_max, points, out);
    }
    if (active == radius)
    {
      return cavddm::cmd_radius(cfg, out);
    }
    if (active == run)
    {
      return cavddm::cmd_run(cfg, out, output_path.empty() ? std::cerr : std::cout);
    }
    if (active == sweep_d)
    {
      return cavddm::cmd_sweep_d(cfg, d_list, out, std::cerr);
    }
    if (active == sweep_k)
    {
      return cavddm::cmd_sweep_k(cfg, ratios, out, std::cerr);
    }
    if (active == spec)
    {
      return cavddm::cmd_spectrum(cfg, out);
    }
    if (active == nmin)
    {
      return cavddm::cmd_nmin(cfg, out);
    }
  }
  catch (const cavddm::SingularSubproblem &e)
  {
    std::cerr << "error: " << e.what() << " (mode " << e.Mode() << ", subdomain " << e.Subdomain()
              << ")\n";
    return cavddm::kExitNumerical;
  }
  catch (const cavddm::NumericalError &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return cavddm::kExitNumerical;
  }
  catch (const std::invalid_argument &e)
  {
    std::cerr << "usage error: " << e.what() << '\n';
    return cavddm::kExitUsage;
  }
  catch (const std::exception &e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return cavddm::kExitNumerical;
  }
  return cavddm::kExitUsage;
}
