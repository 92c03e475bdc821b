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

#include <string>
#include <utility>
#include <vector>

namespace divbound {

// Closed-form minima of symmetric divergence measures at a fixed total
// variation distance eps, and the numerical inverses used by the source
// coding bounds. Operations whose closed form diverges at eps = 1 either
// return +infinity (Chernoff, generic symmetric generators) or reject eps = 1
// (capacitory, Jeffreys).

enum class PairKind
{
  two_point,
  three_point
};

/**
 * Pair of distributions at total variation distance eps.
 *
 *   two_point:   P = ((1-eps)/2, (1+eps)/2),  Q = ((1+eps)/2, (1-eps)/2)
 *   three_point: P = (eps, 1-eps, 0),         Q = (0, 1-eps, eps)
 */
struct ExtremalPair
{
  FiniteDist P;
  FiniteDist Q;
  double     eps = 0.0;
  PairKind   kind = PairKind::two_point;
};

ExtremalPair extremal_pair(double eps, PairKind kind);

struct BoundPoint
{
  double eps;
  double value;
};

/// Tabulated bound values; eps strictly increasing.
struct BoundCurve
{
  std::string             name;
  std::vector<BoundPoint> points;
};

/**
 * Infimum of a symmetric D_f at total variation eps:
 *   (1 - eps) f((1 + eps) / (1 - eps)) - 2 f'(1) eps,
 * with the eps = 1 value taken as the limit 2 slope_at_inf - 2 f'(1).
 *
 * Throws std::invalid_argument for asymmetric generators and for non-smooth
 * generators other than total variation, whose bound is eps itself.
 */
double symmetric_lower_bound(FGenerator const &gen, double eps);

/// (1 - eps, sqrt(1 - eps^2)): the range of the Bhattacharyya coefficient.
std::pair<double, double> bhattacharyya_bounds(double eps);

/// -1/2 log(1 - eps^2); +infinity at eps = 1.
double chernoff_min(double eps);

/// 2 d((1 - eps)/2 || 1/2) for eps in [0,1). Tends to 2 log 2 as eps -> 1.
double capacitory_min(double eps);

/// eps log((1 + eps)/(1 - eps)) for eps in [0,1).
double jeffreys_min(double eps);

/**
 * Objective whose minimum over beta is the least relative entropy at total
 * variation eps. Defined for beta in [eps - 1, 1 - eps].
 */
double exact_kl_objective(double eps, double beta);

/**
 * L(eps) = inf { D(P||Q) : d_TV(P,Q) = eps }, eps in [0,1).
 *
 * The beta search is restricted to [eps - 1, 0]: a coarse scan brackets the
 * minimum, then golden-section narrows it to width `tol`.
 */
double exact_kl_min(double eps, double tol = kDefaultTolerances.search);

/// Same minimization over the full interval [eps - 1, 1 - eps].
double exact_kl_min_full(double eps, double tol = kDefaultTolerances.search);

/// eps in [0,1) with exact_kl_min(eps) = x, by bisection.
double inverse_exact_kl(double x, double tol = kDefaultTolerances.search);

/// eps in [0,1) with eps log((1+eps)/(1-eps)) = x, by bisection.
double inverse_jeffreys(double x, double tol = kDefaultTolerances.search);

/// Throws std::invalid_argument unless eps lies in [0, 1] (or [0, 1) when `open`).
void require_eps(double eps, bool open, char const *what);

}  // namespace divbound
