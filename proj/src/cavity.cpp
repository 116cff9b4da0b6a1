// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#include "cavddm/cavity.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include "cavddm/error.hpp"

namespace cavddm
{

WallKind parse_wall_kind(const std::string &text)
{
  if (text == "dirichlet")
  {
    return WallKind::Dirichlet;
  }
  if (text == "neumann")
  {
    return WallKind::Neumann;
  }
  throw std::invalid_argument("unknown wall kind '" + text + "'");
}

const char *wall_kind_name(WallKind w)
{
  return w == WallKind::Dirichlet ? "dirichlet" : "neumann";
}

ModeFrequency CavityConfig::Mode(int m) const
{
  return {m, m * std::numbers::pi / height};
}

int CavityConfig::PropagatingCount() const
{
  int n = 0;
  while (classify_branch(Mode(n + 1).s, k) == Branch::Propagating)
  {
    n++;
  }
  return n;
}

void CavityConfig::Validate() const
{
  if (!(length > 0.0 && height > 0.0 && k > 0.0) || !std::isfinite(length * height * k))
  {
    throw std::invalid_argument("cavity: length, height and k must be positive");
  }
  if (excitation_modes < 0 || max_modes < 1 || max_modes < excitation_modes)
  {
    throw std::invalid_argument("cavity: need M >= 1 and M >= K >= 0");
  }
  for (int m = 1; m <= max_modes; m++)
  {
    const double s = Mode(m).s;
    const Branch br = classify_branch(s, k);
    bool resonant = false;
    if (br == Branch::Propagating)
    {
      const double kx = std::sqrt(k * k - s * s);
      resonant = std::abs(std::sin(kx * length)) < 1.0e-12;
    }
    else if (br == Branch::Grazing)
    {
      resonant = (wall == WallKind::Neumann);
    }
    if (resonant)
    {
      throw ResonantConfig("cavity: k^2 is an eigenvalue (mode " + std::to_string(m) + ")");
    }
  }
}

std::vector<ModeFrequency> mode_set(const CavityConfig &cfg)
{
  std::vector<ModeFrequency> modes;
  modes.reserve(cfg.max_modes);
  for (int m = 1; m <= cfg.max_modes; m++)
  {
    modes.push_back(cfg.Mode(m));
  }
  return modes;
}

Partition Partition::uniform(const CavityConfig &cfg, int D, double delta)
{
  if (D < 1)
  {
    throw std::invalid_argument("partition: need at least one subdomain");
  }
  Partition p;
  p.length = cfg.length;
  p.overlap_delta = delta;
  for (int i = 1; i < D; i++)
  {
    p.interfaces.push_back(-cfg.length / 2.0 + i * cfg.length / D);
  }
  p.Validate();
  return p;
}

double Partition::Left(int i) const
{
  return i == 0 ? -length / 2.0 : interfaces[i - 1] - overlap_delta;
}

double Partition::Right(int i) const
{
  return i == Subdomains() - 1 ? length / 2.0 : interfaces[i] + overlap_delta;
}

double Partition::NominalLeft(int i) const { return i == 0 ? -length / 2.0 : interfaces[i - 1]; }

double Partition::NominalRight(int i) const
{
  return i == Subdomains() - 1 ? length / 2.0 : interfaces[i];
}

double Partition::WallDistanceRight(int q) const
{
  return length / 2.0 - interfaces[q] - overlap_delta;
}

double Partition::WallDistanceLeft(int q) const
{
  return interfaces[q] - overlap_delta + length / 2.0;
}

void Partition::Validate() const
{
  if (!(length > 0.0) || !(overlap_delta >= 0.0))
  {
    throw std::invalid_argument("partition: need length > 0 and overlap >= 0");
  }
  double prev = -length / 2.0;
  for (double g : interfaces)
  {
    if (!(g > prev) || !(g < length / 2.0))
    {
      throw std::invalid_argument("partition: interfaces must increase strictly inside the cavity");
    }
    if (!(g - prev > 2.0 * overlap_delta))
    {
      throw std::invalid_argument("partition: overlap wider than a subdomain");
    }
    prev = g;
  }
  if (!(length / 2.0 - prev > 2.0 * overlap_delta))
  {
    throw std::invalid_argument("partition: overlap wider than a subdomain");
  }
}

}  // namespace cavddm
