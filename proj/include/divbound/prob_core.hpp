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

#include <istream>
#include <span>
#include <string>
#include <vector>

namespace divbound {

/**
 * Numerical tolerances shared by every module.
 *
 * All logarithms inside the library are natural; base-d quantities are
 * converted only where a base is part of the operation's contract.
 */
struct Tolerances
{
  double normalization = 1e-9;   ///< allowed |sum - 1| when building a distribution
  double negative_clamp = 1e-15; ///< entries in [-clamp, 0) are clamped to zero
  double equality = 1e-12;       ///< identity-of-indiscernibles checks
  double search = 1e-10;         ///< golden-section width / bisection residual
  double check = 1e-9;           ///< slack when checking a bound against a value
};

inline constexpr Tolerances kDefaultTolerances{};

/// Symbol names of a finite alphabet.
using Labels = std::vector<std::string>;

/// Probability vector on a labeled finite alphabet. Immutable once built.
class FiniteDist
{
public:
  FiniteDist() = default;

  std::size_t size() const noexcept { return mass_.size(); }
  std::span<double const> mass() const noexcept { return mass_; }
  std::vector<std::string> const &labels() const noexcept { return labels_; }
  double operator[](std::size_t i) const { return mass_[i]; }
  std::string const &label(std::size_t i) const { return labels_[i]; }

  /// Mass of `label`, zero when the label is not in the alphabet.
  double mass_of(std::string const &label) const;

  friend bool operator==(FiniteDist const &, FiniteDist const &) = default;

private:
  friend FiniteDist make_dist(std::vector<std::string>, std::vector<double>, Tolerances const &);

  std::vector<std::string> labels_;
  std::vector<double>      mass_;
};

/**
 * Validate and normalize a distribution.
 *
 * Throws std::invalid_argument on a length mismatch, duplicate labels, an
 * entry below -tol.negative_clamp, or a total deviating from one by more than
 * tol.normalization.
 */
FiniteDist make_dist(std::vector<std::string> labels, std::vector<double> mass,
                     Tolerances const &tol = kDefaultTolerances);

/// Same as make_dist with generated labels x1, x2, ...
FiniteDist make_dist(std::vector<double> mass, Tolerances const &tol = kDefaultTolerances);

/// Masses of two distributions laid out over a common alphabet.
struct AlignedPair
{
  std::vector<std::string> labels;
  std::vector<double>      p;
  std::vector<double>      q;
};

/// Union-align P and Q: P's labels in order, then Q's unseen labels; missing mass is zero.
AlignedPair align(FiniteDist const &P, FiniteDist const &Q);

/// Half the L1 distance between P and Q over the union alphabet.
double total_variation(FiniteDist const &P, FiniteDist const &Q);

/// L1 norm of P - Q over the union alphabet.
double l1_distance(FiniteDist const &P, FiniteDist const &Q);

/// d(p||q) in nats with 0 log 0 = 0. Requires p in [0,1] and q in (0,1).
double binary_divergence(double p, double q);

/// log_d(x) computed through base-2 logarithms so exact powers of 2-power bases stay exact.
double log_base(double x, int d);

/// Shannon entropy to the base d (d >= 2).
double entropy_base(FiniteDist const &P, int d);

/// Number of symbols with nonzero mass.
std::size_t support_size(FiniteDist const &P);

/**
 * Read the distribution text format: one `label<TAB>probability` per line,
 * blank lines and lines starting with `#` ignored. Errors carry the line number.
 */
FiniteDist parse_dist(std::istream &in, Tolerances const &tol = kDefaultTolerances);
FiniteDist load_dist(std::string const &path, Tolerances const &tol = kDefaultTolerances);

}  // namespace divbound
