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

#include "divbound/fdiv_engine.hpp"
#include "divbound/prob_core.hpp"

#include <span>
#include <string>

namespace divbound {

/// Masses at or below this are treated as zero by the strictly-positive operations.
inline constexpr double kPositiveFloor = 1e-300;

/**
 * The three terms of
 *
 *   r_min D_f(P||Q) <= -D_g(P||Q) - f(1 + chi^2(P,Q)) <= r_max D_f(P||Q)
 *
 * where g(t) = -t f(t) and r_min, r_max are the extreme likelihood ratios P/Q.
 */
struct SandwichResult
{
  double      r_min  = 1.0;
  double      r_max  = 1.0;
  double      left   = 0.0;
  double      middle = 0.0;
  double      right  = 0.0;
  double      chi2   = 0.0;
  std::string diagnostic;  ///< set when chi^2 overflowed

  /// left <= middle <= right with the given slack.
  bool ordered(double slack = 1e-10) const;
};

/**
 * g(t) = -t f(t). For dual_kl this is the kl generator and for
 * dual_chi_squared the linear generator t - 1; those pairings are certified.
 * Any other f gets g built numerically and must pass the convexity spot-check.
 * Throws std::invalid_argument when g is not convex.
 */
FGenerator paired_generator(FGenerator const &f);

/// True when `f` is one of the pre-certified (f, g) pairings.
bool is_certified_pair(FGenerator const &f);

/// Throws std::invalid_argument when P or Q has a mass at or below kPositiveFloor.
void require_positive(FiniteDist const &P, FiniteDist const &Q, char const *what);

SandwichResult sandwich(FGenerator const &f, FiniteDist const &P, FiniteDist const &Q);

/// J_n(f, u, W) = sum W_i f(u_i) - f(sum W_i u_i).
double jensen_functional(FGenerator const &f, std::span<double const> u, FiniteDist const &W);

struct DragomirTerms
{
  double left;
  double mid;
  double right;
};

/// (r_min J_n(f,u,Q), J_n(f,u,P), r_max J_n(f,u,Q)) for strictly positive P, Q.
DragomirTerms dragomir_sandwich_check(FGenerator const &f, std::span<double const> u,
                                      FiniteDist const &P, FiniteDist const &Q);

struct Chi2ExpBound
{
  double chi2;
  double exp_d_minus_1;
};

/// Both sides of chi^2(P,Q) >= exp(D(P||Q)) - 1.
Chi2ExpBound chi2_exp_bound_check(FiniteDist const &P, FiniteDist const &Q);

}  // namespace divbound
