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

#include "divbound/tight_bounds.hpp"

#include "divbound/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace divbound {

namespace {

constexpr double kInf         = std::numeric_limits<double>::infinity();
constexpr int    kCoarseCells = 64;

// Largest double below one; upper end of every bisection bracket on [0,1).
double const kBelowOne = std::nextafter(1.0, 0.0);

double scan_then_golden(double eps, double lo, double hi, double tol)
{
  double best_beta  = lo;
  double best_value = kInf;
  int    best_i     = 0;
  for (int i = 0; i <= kCoarseCells; ++i)
  {
    double const beta = lo + (hi - lo) * i / kCoarseCells;
    double const v    = exact_kl_objective(eps, beta);
    if (v < best_value)
    {
      best_value = v;
      best_beta  = beta;
      best_i     = i;
    }
  }
  double const step = (hi - lo) / kCoarseCells;
  double const a    = best_i == 0 ? lo : best_beta - step;
  double const b    = best_i == kCoarseCells ? hi : best_beta + step;
  auto const   fine = numerics::golden_section(
      [eps](double beta) { return exact_kl_objective(eps, beta); }, a, b, tol);
  return std::max(0.0, std::min(best_value, fine.value));
}

}  // namespace

void require_eps(double eps, bool open, char const *what)
{
  bool const ok = eps >= 0.0 && (open ? eps < 1.0 : eps <= 1.0);
  if (!ok)
  {
    throw std::invalid_argument(std::string(what) + ": eps " + std::to_string(eps) + " outside " +
                                (open ? "[0,1)" : "[0,1]"));
  }
}

ExtremalPair extremal_pair(double eps, PairKind kind)
{
  require_eps(eps, false, "extremal_pair");
  ExtremalPair out;
  out.eps  = eps;
  out.kind = kind;
  if (kind == PairKind::two_point)
  {
    out.P = make_dist({(1.0 - eps) / 2.0, (1.0 + eps) / 2.0});
    out.Q = make_dist({(1.0 + eps) / 2.0, (1.0 - eps) / 2.0});
  }
  else
  {
    out.P = make_dist({eps, 1.0 - eps, 0.0});
    out.Q = make_dist({0.0, 1.0 - eps, eps});
  }
  return out;
}

double symmetric_lower_bound(FGenerator const &gen, double eps)
{
  require_eps(eps, false, "symmetric_lower_bound");
  if (!gen.symmetry_constant)
  {
    throw std::invalid_argument("symmetric_lower_bound: generator '" + gen.name + "' is not symmetric");
  }
  if (!gen.smooth)
  {
    if (gen.name == generator_names::kTotalVariation)
    {
      return eps;
    }
    throw std::invalid_argument("symmetric_lower_bound: generator '" + gen.name + "' is not smooth");
  }
  if (eps == 1.0)
  {
    return gen.slope_at_inf == kInf ? kInf : 2.0 * gen.slope_at_inf - 2.0 * gen.fprime_at_1;
  }
  return (1.0 - eps) * gen((1.0 + eps) / (1.0 - eps)) - 2.0 * gen.fprime_at_1 * eps;
}

std::pair<double, double> bhattacharyya_bounds(double eps)
{
  require_eps(eps, false, "bhattacharyya_bounds");
  return {1.0 - eps, std::sqrt(1.0 - eps * eps)};
}

double chernoff_min(double eps)
{
  require_eps(eps, false, "chernoff_min");
  return eps == 1.0 ? kInf : -0.5 * std::log1p(-eps * eps);
}

double capacitory_min(double eps)
{
  require_eps(eps, true, "capacitory_min");
  return 2.0 * binary_divergence((1.0 - eps) / 2.0, 0.5);
}

double jeffreys_min(double eps)
{
  require_eps(eps, true, "jeffreys_min");
  return 2.0 * eps * std::atanh(eps);
}

double exact_kl_objective(double eps, double beta)
{
  double const w1 = (eps + 1.0 - beta) / 2.0;
  double const w2 = (beta + 1.0 - eps) / 2.0;
  double       v  = 0.0;
  if (w1 > 0.0)
  {
    double const gap = 1.0 - eps - beta;
    if (gap <= 0.0)
    {
      return kInf;
    }
    v += w1 * std::log1p(2.0 * eps / gap);
  }
  if (w2 > 0.0)
  {
    v += w2 * std::log1p(-2.0 * eps / (beta + 1.0 + eps));
  }
  return v;
}

double exact_kl_min(double eps, double tol)
{
  require_eps(eps, true, "exact_kl_min");
  if (eps == 0.0)
  {
    return 0.0;
  }
  return scan_then_golden(eps, eps - 1.0, 0.0, tol);
}

double exact_kl_min_full(double eps, double tol)
{
  require_eps(eps, true, "exact_kl_min_full");
  if (eps == 0.0)
  {
    return 0.0;
  }
  return scan_then_golden(eps, eps - 1.0, 1.0 - eps, tol);
}

double inverse_exact_kl(double x, double tol)
{
  if (!(x >= 0.0))
  {
    throw std::invalid_argument("inverse_exact_kl: x must be >= 0");
  }
  if (x == 0.0)
  {
    return 0.0;
  }
  auto const L = [tol](double eps) { return exact_kl_min(eps, tol); };
  if (x >= L(kBelowOne))
  {
    return kBelowOne;
  }
  return numerics::bisect_increasing(L, x, 0.0, kBelowOne, tol);
}

double inverse_jeffreys(double x, double tol)
{
  if (!(x >= 0.0))
  {
    throw std::invalid_argument("inverse_jeffreys: x must be >= 0");
  }
  if (x == 0.0)
  {
    return 0.0;
  }
  auto const J = [](double eps) { return 2.0 * eps * std::atanh(eps); };
  if (x >= J(kBelowOne))
  {
    return kBelowOne;
  }
  return numerics::bisect_increasing(J, x, 0.0, kBelowOne, tol);
}

}  // namespace divbound
