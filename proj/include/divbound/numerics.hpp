//------------------------------------------------------------------------------
//
//   Copyright 2026 The divbound Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

#include <cmath>

namespace divbound::numerics {

inline constexpr int    kMaxBisection = 200;
inline constexpr double kBracketFloor = 1e-15;

struct ScalarMin
{
  double arg;
  double value;
};

/**
 * Golden-section search for the minimum of a unimodal function on [lo, hi].
 * Stops once the bracket is narrower than `width`.
 */
template <typename F>
ScalarMin golden_section(F &&f, double lo, double hi, double width, int max_iter = 500)
{
  double const invphi = (std::sqrt(5.0) - 1.0) / 2.0;

  double c  = hi - invphi * (hi - lo);
  double d  = lo + invphi * (hi - lo);
  double fc = f(c);
  double fd = f(d);

  for (int i = 0; i < max_iter && (hi - lo) > width; ++i)
  {
    if (fc < fd)
    {
      hi = d;
      d  = c;
      fd = fc;
      c  = hi - invphi * (hi - lo);
      fc = f(c);
    }
    else
    {
      lo = c;
      c  = d;
      fc = fd;
      d  = lo + invphi * (hi - lo);
      fd = f(d);
    }
  }
  return fc < fd ? ScalarMin{c, fc} : ScalarMin{d, fd};
}

/**
 * Solve f(x) = target for x in [lo, hi] where f is nondecreasing.
 * Returns whichever bracket end has the smaller residual; stops when the
 * residual is within `residual` and the bracket is below kBracketFloor, when
 * the bracket can no longer be split, or after max_iter steps.
 */
template <typename F>
double bisect_increasing(F &&f, double target, double lo, double hi, double residual,
                         int max_iter = kMaxBisection)
{
  for (int i = 0; i < max_iter; ++i)
  {
    double const mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi)
    {
      break;
    }
    double const v = f(mid);
    if (v < target)
    {
      lo = mid;
    }
    else
    {
      hi = mid;
    }
    if (std::abs(v - target) <= residual && hi - lo <= kBracketFloor)
    {
      break;
    }
  }
  double const flo = f(lo);
  double const fhi = f(hi);
  return std::abs(flo - target) <= std::abs(fhi - target) ? lo : hi;
}

}  // namespace divbound::numerics
