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

#include "divbound/fdiv_engine.hpp"

#include "divbound/numerics.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace divbound {

namespace {

constexpr double kInf  = std::numeric_limits<double>::infinity();
double const     kLog2 = std::log(2.0);

constexpr double kConvexSlack   = 1e-10;
constexpr double kSymmetrySlack = 1e-10;
constexpr double kUnitSlack     = 1e-12;

double scaled(double slack, double a, double b)
{
  return slack * std::max({1.0, std::abs(a), std::abs(b)});
}

struct Alias
{
  std::string_view alias;
  std::string_view canonical;
};

constexpr Alias kAliases[] = {
    {"tv", generator_names::kTotalVariation},
    {"hellinger2", generator_names::kSquaredHellinger},
    {"chi2", generator_names::kChiSquared},
    {"dual_chi2", generator_names::kDualChiSquared},
};

}  // namespace

bool spot_check_convex(std::function<double(double)> const &f, std::uint64_t seed, int trials,
                       double lo, double hi)
{
  std::mt19937_64                        rng(seed);
  std::uniform_real_distribution<double> unit(std::log(lo), std::log(hi));
  for (int i = 0; i < trials; ++i)
  {
    double x[3] = {std::exp(unit(rng)), std::exp(unit(rng)), std::exp(unit(rng))};
    std::sort(std::begin(x), std::end(x));
    auto const [s, t, u] = x;
    if (!(s < t && t < u))
    {
      continue;
    }
    double const fs    = f(s);
    double const fu    = f(u);
    double const w     = (t - s) / (u - s);
    double const chord = (1.0 - w) * fs + w * fu;
    if (f(t) > chord + scaled(kConvexSlack, fs, fu))
    {
      return false;
    }
  }
  return true;
}

std::optional<double> check_symmetry(FGenerator const &gen)
{
  double const a = 2.0 * gen.fprime_at_1;
  int const    n = 241;
  for (int i = 0; i < n; ++i)
  {
    double const u   = std::pow(10.0, -6.0 + 12.0 * i / (n - 1));
    double const lhs = gen(u);
    double const rhs = u * gen(1.0 / u) + a * (u - 1.0);
    if (!(std::abs(lhs - rhs) <= scaled(kSymmetrySlack, lhs, rhs)))
    {
      return std::nullopt;
    }
  }
  return a;
}

GeneratorCheck check_generator(FGenerator const &gen, std::uint64_t seed)
{
  if (!gen.eval)
  {
    return {false, gen.name + ": no evaluation function"};
  }
  if (!(std::abs(gen(1.0)) <= kUnitSlack))
  {
    return {false, gen.name + ": f(1) != 0"};
  }
  if (!spot_check_convex(gen.eval, seed))
  {
    return {false, gen.name + ": convexity spot-check failed"};
  }
  if (gen.symmetry_constant)
  {
    auto const a = check_symmetry(gen);
    if (!a || std::abs(*a - *gen.symmetry_constant) > kSymmetrySlack)
    {
      return {false, gen.name + ": symmetry identity does not hold"};
    }
  }
  return {};
}

GeneratorRegistry::GeneratorRegistry()
{
  using namespace generator_names;

  entries_.push_back({std::string(kTotalVariation), [](double t) { return 0.5 * std::abs(t - 1.0); },
                      0.5, 0.5, 0.0, 0.0, false});
  entries_.push_back({std::string(kKl), [](double t) { return t * std::log(t); }, 0.0, kInf, 1.0,
                      std::nullopt, true});
  entries_.push_back({std::string(kDualKl), [](double t) { return -std::log(t); }, kInf, 0.0, -1.0,
                      std::nullopt, true});
  entries_.push_back({std::string(kSquaredHellinger),
                      [](double t) {
                        double const r = std::sqrt(t) - 1.0;
                        return r * r;
                      },
                      1.0, 1.0, 0.0, 0.0, true});
  entries_.push_back({std::string(kJeffreys), [](double t) { return 0.5 * (t - 1.0) * std::log(t); },
                      kInf, kInf, 0.0, 0.0, true});
  // t log t - (t+1) log(1+t) rewritten to avoid cancellation at large t.
  entries_.push_back({std::string(kCapacitory),
                      [](double t) { return -t * std::log1p(1.0 / t) - std::log1p(t) + 2.0 * kLog2; },
                      2.0 * kLog2, 0.0, -kLog2, -2.0 * kLog2, true});
  entries_.push_back({std::string(kChiSquared), [](double t) { return (t - 1.0) * (t - 1.0); }, 1.0,
                      kInf, 0.0, std::nullopt, true});
  entries_.push_back({std::string(kDualChiSquared), [](double t) { return 1.0 / t - 1.0; }, kInf, 0.0,
                      -1.0, std::nullopt, true});
}

GeneratorRegistry const &GeneratorRegistry::instance()
{
  static GeneratorRegistry const registry;
  return registry;
}

std::string canonical_generator_name(std::string_view name)
{
  for (auto const &a : kAliases)
  {
    if (a.alias == name)
    {
      return std::string(a.canonical);
    }
  }
  return std::string(name);
}

bool GeneratorRegistry::contains(std::string_view name) const
{
  auto const key = canonical_generator_name(name);
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](FGenerator const &g) { return g.name == key; });
}

FGenerator const &GeneratorRegistry::get(std::string_view name) const
{
  auto const key = canonical_generator_name(name);
  for (auto const &g : entries_)
  {
    if (g.name == key)
    {
      return g;
    }
  }
  throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
}

std::vector<std::string> GeneratorRegistry::names() const
{
  std::vector<std::string> out;
  for (auto const &g : entries_)
  {
    out.push_back(g.name);
  }
  return out;
}

FGenerator GeneratorRegistry::certify(FGenerator gen)
{
  auto const check = check_generator(gen);
  if (!check.ok)
  {
    throw std::invalid_argument("generator rejected: " + check.failure);
  }
  return gen;
}

FGenerator const &generator(std::string_view name)
{
  return GeneratorRegistry::instance().get(name);
}

double f_divergence(FGenerator const &gen, std::span<double const> p, std::span<double const> q)
{
  if (p.size() != q.size())
  {
    throw std::invalid_argument("f_divergence: unaligned mass vectors");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    double term = 0.0;
    if (p[i] == 0.0 && q[i] == 0.0)
    {
      continue;
    }
    if (q[i] == 0.0)
    {
      term = gen.slope_at_inf == 0.0 ? 0.0 : p[i] * gen.slope_at_inf;
    }
    else if (p[i] == 0.0)
    {
      term = q[i] * gen.f_at_0;
    }
    else
    {
      term = q[i] * gen(p[i] / q[i]);
    }
    if (term == kInf)
    {
      return kInf;
    }
    sum += term;
  }
  assert(!std::isnan(sum));
  return sum;
}

double f_divergence(FGenerator const &gen, FiniteDist const &P, FiniteDist const &Q)
{
  auto const a = align(P, Q);
  return f_divergence(gen, a.p, a.q);
}

double bhattacharyya(std::span<double const> p, std::span<double const> q)
{
  double z = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    z += std::sqrt(p[i] * q[i]);
  }
  return z;
}

double bhattacharyya(FiniteDist const &P, FiniteDist const &Q)
{
  auto const a = align(P, Q);
  return bhattacharyya(a.p, a.q);
}

double chernoff_information(std::span<double const> p, std::span<double const> q, double tol)
{
  // Only symbols charged by both distributions contribute for lambda in (0,1);
  // the endpoint values are the limits from inside.
  std::vector<double> log_q, log_ratio;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    if (p[i] > 0.0 && q[i] > 0.0)
    {
      log_q.push_back(std::log(q[i]));
      log_ratio.push_back(std::log(p[i]) - std::log(q[i]));
    }
  }
  if (log_q.empty())
  {
    return kInf;
  }

  auto g = [&](double lambda) {
    double m = -kInf;
    for (std::size_t i = 0; i < log_q.size(); ++i)
    {
      m = std::max(m, log_q[i] + lambda * log_ratio[i]);
    }
    double s = 0.0;
    for (std::size_t i = 0; i < log_q.size(); ++i)
    {
      s += std::exp(log_q[i] + lambda * log_ratio[i] - m);
    }
    return m + std::log(s);
  };

  auto const best  = numerics::golden_section(g, 0.0, 1.0, tol);
  double const low = std::min({best.value, g(0.0), g(1.0)});
  assert(!std::isnan(low));
  return std::max(0.0, -low);
}

double chernoff_information(FiniteDist const &P, FiniteDist const &Q, double tol)
{
  auto const a = align(P, Q);
  return chernoff_information(a.p, a.q, tol);
}

double kl_divergence(FiniteDist const &P, FiniteDist const &Q)
{
  return f_divergence(generator(generator_names::kKl), P, Q);
}

double chi_squared(FiniteDist const &P, FiniteDist const &Q)
{
  return f_divergence(generator(generator_names::kChiSquared), P, Q);
}

}  // namespace divbound
