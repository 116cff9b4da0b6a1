// Copyright cavddm contributors. All Rights Reserved.
// SPDX-License-Identifier: Apache-2.0

#ifndef CAVDDM_FORMAT_HPP
#define CAVDDM_FORMAT_HPP

#include <cstdio>
#include <cstdlib>
#include <string>

namespace cavddm
{

// Lossless text form used by every table and CSV writer: 17 significant digits.
inline std::string format_real(double x)
{
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Shortest decimal form that parses back to the same double.
inline std::string format_short(double x)
{
  char buf[40];
  for (int p = 1; p <= 17; p++)
  {
    std::snprintf(buf, sizeof(buf), "%.*g", p, x);
    if (std::strtod(buf, nullptr) == x)
    {
      break;
    }
  }
  return buf;
}

}  // namespace cavddm

#endif  // CAVDDM_FORMAT_HPP
