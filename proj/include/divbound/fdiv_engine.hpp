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

#include "divbound/prob_core.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace divbound {

/**
 * A convex generator f: (0, inf) -> R with f(1) = 0.
 *
 * The two limits encode the zero-mass conventions of D_f:
 *   Q(x) > 0, P(x) = 0   contributes Q(x) * f_at_0
 *   Q(x) = 0, P(x) = a   contributes a * slope_at_inf
 * Either limit may be +infinity.
 */
struct FGenerator
{
  std::string                   name;
  std::function<double(double)> eval;
  double                        f_at_0       = 0.0;
  double                        slope_at_inf = 0.0;
  double                        fprime_at_1  = 0.0;
  std::optional<double>         symmetry_constant;
  bool                          smooth = true;  ///< twice differentiable on (0, inf)

  double operator()(double t) const { return eval(t); }
};

namespace generator_names {
inline constexpr std::string_view kTotalVariation   = "total_variation";
inline constexpr std::string_view kKl               = "kl";
inline constexpr std::string_view kDualKl           = "dual_kl";
inline constexpr std::string_view kSquaredHellinger = "squared_hellinger";
inline constexpr std::string_view kJeffreys         = "jeffreys";
inline constexpr std::string_view kCapacitory       = "capacitory";
inline constexpr std::string_view kChiSquared       = "chi_squared";
inline constexpr std::string_view kDualChiSquared   = "dual_chi_squared";
}  // namespace generator_names

/// Outcome of the invariant spot-checks run on a generator.
struct GeneratorCheck
{
  bool        ok = true;
  std::string failure;
};

/// f(1) = 0, the convexity spot-check and, if a symmetry constant is present, the symmetry identity.
GeneratorCheck check_generator(FGenerator const &gen, std::uint64_t seed = 0x5eed);

/**
 * Convexity spot-check: for `trials` random triples s < t < u drawn
 * log-uniformly from [lo, hi], f(t) must not exceed the chord through
 * (s, f(s)) and (u, f(u)) by more than 1e-10 (scaled by the magnitude of
 * the chord endpoints when they exceed one).
 */
bool spot_check_convex(std::function<double(double)> const &f, std::uint64_t seed,
                       int trials = 1000, double lo = 1e-3, double hi = 1e3);

/**
 * Fixed, read-only set of named generators. Lookup accepts the canonical
 * names and the short CLI aliases (tv, hellinger2, chi2, dual_chi2).
 */
class GeneratorRegistry
{
public:
  static GeneratorRegistry const &instance();

  FGenerator const &get(std::string_view name) const;
  bool              contains(std::string_view name) const;
  std::vector<std::string> names() const;

  /// Register a user generator after running check_generator; throws on failure.
  static FGenerator certify(FGenerator gen);

private:
  GeneratorRegistry();
  std::vector<FGenerator> entries_;
};

/// Registry entry by name; shorthand for GeneratorRegistry::instance().get.
FGenerator const &generator(std::string_view name);

/// Canonical registry name for a CLI alias, or the name itself.
std::string canonical_generator_name(std::string_view name);

/// D_f(P || Q) with the zero-mass conventions. May return +infinity.
double f_divergence(FGenerator const &gen, FiniteDist const &P, FiniteDist const &Q);

/// Same as f_divergence on already aligned mass vectors.
double f_divergence(FGenerator const &gen, std::span<double const> p, std::span<double const> q);

/**
 * Symmetry test f(u) = u f(1/u) + a (u - 1) with a = 2 f'(1), checked on a
 * log-spaced grid over [1e-6, 1e6]. Returns a when the identity holds.
 */
std::optional<double> check_symmetry(FGenerator const &gen);

/// Bhattacharyya coefficient sum sqrt(P Q).
double bhattacharyya(FiniteDist const &P, FiniteDist const &Q);
double bhattacharyya(std::span<double const> p, std::span<double const> q);

/**
 * Chernoff information -min_{lambda in [0,1]} log sum P^lambda Q^(1-lambda).
 * Golden-section search in lambda to width `tol`. +infinity for disjoint supports.
 */
double chernoff_information(FiniteDist const &P, FiniteDist const &Q,
                            double tol = kDefaultTolerances.search);
double chernoff_information(std::span<double const> p, std::span<double const> q,
                            double tol = kDefaultTolerances.search);

/// Relative entropy D(P||Q) in nats (the kl generator).
double kl_divergence(FiniteDist const &P, FiniteDist const &Q);

/// chi^2(P, Q) = sum (P - Q)^2 / Q.
double chi_squared(FiniteDist const &P, FiniteDist const &Q);

}  // namespace divbound
