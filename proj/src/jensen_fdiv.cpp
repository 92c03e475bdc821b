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

#include "divbound/jensen_fdiv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace divbound {

namespace {

constexpr std::uint64_t kPairingSeed = 0x9a1d;

struct Ratios
{
  double r_min;
  double r_max;
};

Ratios likelihood_ratios(std::span<double const> p, std::span<double const> q)
{
  Ratios r{std::numeric_limits<double>::infinity(), 0.0};
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    double const t = p[i] / q[i];
    r.r_min        = std::min(r.r_min, t);
    r.r_max        = std::max(r.r_max, t);
  }
  return r;
}

double jensen_on(FGenerator const &f, std::span<double const> u, std::span<double const> w)
{
  double mean  = 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
  {
    mean += w[i] * u[i];
    total += w[i] * f(u[i]);
  }
  return total - f(mean);
}

void require_u(std::span<double const> u, std::size_t n, char const *what)
{
  if (u.size() != n)
  {
    throw std::invalid_argument(std::string(what) + ": u has " + std::to_string(u.size()) +
                                " entries, alphabet has " + std::to_string(n));
  }
  for (double x : u)
  {
    if (!(x > 0.0) || !std::isfinite(x))
    {
      throw std::invalid_argument(std::string(what) + ": u entries must be positive");
    }
  }
}

}  // namespace

bool SandwichResult::ordered(double slack) const
{
  return middle - left >= -slack && right - middle >= -slack;
}

bool is_certified_pair(FGenerator const &f)
{
  return f.name == generator_names::kDualKl || f.name == generator_names::kDualChiSquared;
}

FGenerator paired_generator(FGenerator const &f)
{
  if (f.name == generator_names::kDualKl)
  {
    return generator(generator_names::kKl);
  }
  if (f.name == generator_names::kDualChiSquared)
  {
    return FGenerator{"linear", [](double t) { return t - 1.0; }, -1.0, 1.0, 1.0, 2.0, true};
  }

  FGenerator g;
  g.name = "neg_t_times_" + f.name;
  g.eval = [f](double t) { return -t * f(t); };
  // Zero-mass limits are estimated; the strictly positive callers never use them.
  g.f_at_0       = g.eval(1e-12);
  g.slope_at_inf = -f(1e12);
  g.fprime_at_1  = -f.fprime_at_1;
  g.smooth       = f.smooth;
  if (!spot_check_convex(g.eval, kPairingSeed))
  {
    throw std::invalid_argument("paired generator -t f(t) for '" + f.name + "' is not convex");
  }
  return g;
}

void require_positive(FiniteDist const &P, FiniteDist const &Q, char const *what)
{
  auto const a = align(P, Q);
  for (std::size_t i = 0; i < a.p.size(); ++i)
  {
    if (!(a.p[i] > kPositiveFloor) || !(a.q[i] > kPositiveFloor))
    {
      throw std::invalid_argument(std::string(what) + ": distributions must be strictly positive (symbol '" +
                                  a.labels[i] + "')");
    }
  }
}

SandwichResult sandwich(FGenerator const &f, FiniteDist const &P, FiniteDist const &Q)
{
  require_positive(P, Q, "sandwich");
  FGenerator const g = paired_generator(f);
  auto const       a = align(P, Q);

  SandwichResult out;
  auto const     r = likelihood_ratios(a.p, a.q);
  out.r_min        = r.r_min;
  out.r_max        = r.r_max;

  double const df = f_divergence(f, a.p, a.q);
  double const dg = f_divergence(g, a.p, a.q);
  out.chi2        = f_divergence(generator(generator_names::kChiSquared), a.p, a.q);
  if (!std::isfinite(out.chi2))
  {
    out.diagnostic = "chi^2 overflowed; middle term is an extended-real limit";
  }
  out.left   = out.r_min * df;
  out.right  = out.r_max * df;
  out.middle = -dg - f(1.0 + out.chi2);
  return out;
}

double jensen_functional(FGenerator const &f, std::span<double const> u, FiniteDist const &W)
{
  require_u(u, W.size(), "jensen_functional");
  return jensen_on(f, u, W.mass());
}

DragomirTerms dragomir_sandwich_check(FGenerator const &f, std::span<double const> u,
                                      FiniteDist const &P, FiniteDist const &Q)
{
  require_positive(P, Q, "dragomir_sandwich_check");
  auto const a = align(P, Q);
  require_u(u, a.p.size(), "dragomir_sandwich_check");

  auto const   r   = likelihood_ratios(a.p, a.q);
  double const j_q = jensen_on(f, u, a.q);
  return {r.r_min * j_q, jensen_on(f, u, a.p), r.r_max * j_q};
}

Chi2ExpBound chi2_exp_bound_check(FiniteDist const &P, FiniteDist const &Q)
{
  require_positive(P, Q, "chi2_exp_bound_check");
  return {chi_squared(P, Q), std::expm1(kl_divergence(P, Q))};
}

}  // namespace divbound
