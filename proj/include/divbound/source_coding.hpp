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

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace divbound {

/// Codeword lengths of a uniquely decodable code over a d-ary code alphabet.
class CodeSpec
{
public:
  std::vector<std::string> const &alphabet() const noexcept { return alphabet_; }
  std::vector<int> const         &lengths() const noexcept { return lengths_; }
  int                             base() const noexcept { return base_; }

  /// c_{d,l} = sum d^{-l(u)}.
  double kraft_sum() const;

  /// Length assigned to `label`; throws std::out_of_range if absent.
  int length_of(std::string const &label) const;

private:
  friend CodeSpec make_code(std::vector<std::string>, std::vector<int>, int);

  std::vector<std::string> alphabet_;
  std::vector<int>         lengths_;
  int                      base_ = 2;
};

inline constexpr double kKraftSlack = 1e-12;

/// Throws std::invalid_argument on base < 2, non-positive lengths, or a Kraft sum above 1 + kKraftSlack.
CodeSpec make_code(std::vector<std::string> alphabet, std::vector<int> lengths, int base);

/// Smallest l >= 1 with d^{-l} <= p, i.e. max(1, ceil(log_d 1/p)) computed exactly.
int shannon_length(double p, int d);

/// Shannon code for a strictly positive P.
CodeSpec shannon_code(FiniteDist const &P, int d);

/// Q_{d,l}(u) = d^{-l(u)} / c_{d,l}.
FiniteDist code_distribution(CodeSpec const &code);

/// delta(u) = l(u) + log_d P(u) per symbol of P, in base-d units.
std::vector<double> code_excess(FiniteDist const &P, CodeSpec const &code);

/// Redundancy in base-d units: average length minus H_d(P).
double redundancy(FiniteDist const &P, CodeSpec const &code);

struct IdentityCheck
{
  double lhs;
  double rhs;
};

/// D(P||Q_{d,l}) directly, against redundancy * log d + log c_{d,l}.
IdentityCheck kl_identity_check(FiniteDist const &P, CodeSpec const &code);

/// D(Q_{d,l}||P) directly, against -log c - (log d / c) E_P[delta d^{-delta}].
IdentityCheck dual_kl_identity_check(FiniteDist const &P, CodeSpec const &code);

/// Jeffreys divergence J(P, Q_{d,l}) through the closed form in terms of delta.
double jeffreys_from_excess(FiniteDist const &P, CodeSpec const &code);

/// The three bounds on sum |P - Q_{d,l}| as functions of x = redundancy * log d (nats).
struct L1Bounds
{
  double csiszar;    ///< min(sqrt(2x), 2)
  double tightened;  ///< 2 L^{-1}(x)
  double jeffreys;   ///< 2 eps(x / 2); valid only for codes with delta >= 0
};

L1Bounds l1_bounds_at(double redundancy_nats, double tol = kDefaultTolerances.search);

struct CodingReport
{
  double                avg_length   = 0.0;
  double                entropy_d    = 0.0;
  double                redundancy   = 0.0;  ///< base-d units
  double                redundancy_nats = 0.0;  ///< redundancy * log d
  double                kraft_sum    = 0.0;
  double                kl_PQ        = 0.0;
  double                kl_QP        = 0.0;
  double                jeffreys_val = 0.0;
  double                actual_l1    = 0.0;
  double                bound_csiszar   = 0.0;
  double                bound_tightened = 0.0;
  std::optional<double> bound_jeffreys;
  bool                  delta_nonneg = false;

  /// actual_l1 under every applicable bound and tightened under Csiszar's, with slack.
  bool consistent(double slack = 1e-9) const;
};

/// Full comparison for a strictly positive source P and a code over its alphabet.
CodingReport l1_bounds(FiniteDist const &P, CodeSpec const &code,
                       double tol = kDefaultTolerances.search);

/// Lengths file: one `label<TAB>length` per line, `#` comments ignored.
CodeSpec parse_lengths(std::istream &in, int base);
CodeSpec load_lengths(std::string const &path, int base);

}  // namespace divbound
