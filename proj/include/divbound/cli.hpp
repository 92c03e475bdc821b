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
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace divbound::cli {

inline constexpr int kExitOk       = 0;
inline constexpr int kExitCheck    = 1;  ///< a mathematical check failed
inline constexpr int kExitUsage    = 2;  ///< bad arguments or unreadable/invalid input

class UsageError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

enum class Subcommand
{
  divergence,
  bounds,
  sandwich,
  sourcecode,
  sourcecode_sweep,
  verify
};

struct CliConfig
{
  Subcommand  subcommand = Subcommand::divergence;
  std::string name;         ///< divergence / measure / generator name
  std::string p_path;
  std::string q_path;
  std::string dist_path;
  std::string lengths_path;
  std::string grid;
  int         base    = 2;
  std::size_t samples = 100000;
  std::uint64_t seed  = 1;
  std::string out_path;     ///< empty = standard output

  Tolerances tol;
  double     tol_identity = 1e-10;
  double     tol_gap      = 5e-3;
  double     grid_step    = 1e-3;
  bool       use_grid     = true;
  unsigned   threads      = 0;
};

/// "start:step:stop", inclusive of stop; nonempty and increasing.
std::vector<double> parse_linear_grid(std::string_view spec);

/// "start:stop:npoints", log-spaced, both ends included.
std::vector<double> parse_log_grid(std::string_view spec);

/**
 * Parse argv into a config. Returns std::nullopt after printing help
 * (exit 0). Throws UsageError on bad arguments.
 */
std::optional<CliConfig> parse_args(int argc, char const *const *argv, std::ostream &out);

/// Execute one subcommand, writing CSV to `out` (or config.out_path).
int run(CliConfig const &config, std::ostream &out, std::ostream &err);

/// parse_args + run with exit-status mapping.
int main_entry(int argc, char const *const *argv, std::ostream &out, std::ostream &err);

}  // namespace divbound::cli
