// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CAVDDM_CAVITY_HPP
#define CAVDDM_CAVITY_HPP

#include <string>
#include <vector>
#include "cavddm/symbols.hpp"

namespace cavddm
{

enum class WallKind
{
  Dirichlet,
  Neumann
};

WallKind parse_wall_kind(const std::string &text);
const char *wall_kind_name(WallKind w);

//
// Rectangular cavity [-l/2, l/2] x [0, h]. The left wall carries the excitation
// (unit Dirichlet value, or unit x-derivative for hard walls) on the first K sine modes;
// M sine modes are retained in total.
//
struct CavityConfig
{
  double length = 1.0;
  double height = 0.5;
  double k = 1.0;
  int excitation_modes = 1;
  WallKind wall = WallKind::Dirichlet;
  int max_modes = 2;

  // Checks positivity, M >= K >= 0, and that no retained mode is a cavity resonance.
  void Validate() const;

  ModeFrequency Mode(int m) const;
  // Number of modes with s < k.
  int PropagatingCount() const;
};

// Modes m = 1..M.
std::vector<ModeFrequency> mode_set(const CavityConfig &cfg);

//
// Subdomain i spans [a_i, b_i] with a_0 = -l/2, a_i = g_{i-1} - delta, b_i = g_i + delta,
// b_{D-1} = l/2, where g_i are the D-1 interface positions.
//
struct Partition
{
  double length = 1.0;
  std::vector<double> interfaces;
  double overlap_delta = 0.0;

  static Partition uniform(const CavityConfig &cfg, int D, double delta = 0.0);

  int Subdomains() const { return static_cast<int>(interfaces.size()) + 1; }
  int Interfaces() const { return static_cast<int>(interfaces.size()); }
  double Left(int i) const;
  double Right(int i) const;
  // Non-overlapping cell [g_{i-1}, g_i] used when a single value per point is needed.
  double NominalLeft(int i) const;
  double NominalRight(int i) const;

  // Distance from the right end of subdomain q to the right wall: the length seen by the
  // transmission operator on that end.
  double WallDistanceRight(int q) const;
  // Distance from the left end of subdomain q + 1 to the left wall.
  double WallDistanceLeft(int q) const;

  void Validate() const;
};

}  // namespace cavddm

#endif  // CAVDDM_CAVITY_HPP
