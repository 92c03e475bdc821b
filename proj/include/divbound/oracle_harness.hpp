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
#include "divbound/tight_bounds.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace divbound {

/// Name of the pseudo-random engine behind every harness stream.
inline constexpr std::string_view kRngAlgorithm = "mt19937_64";

/// Seed of the stream for grid point `index` (SplitMix64 of seed and index).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

struct TVConstrainedSampler
{
  int           support_size = 2;  ///< in [2, 8]
  double        eps_target   = 0.5;
  std::uint64_t seed         = 1;
  double        tol          = 1e-9;
};

/// Thrown when no pair meeting the total variation constraint was found in 1000 draws.
class SamplerExhausted : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/**
 * Draws pairs (P, Q) with d_TV(P, Q) = eps_target.
 *
 * Each pair is built as P = m + eps a, Q = m + eps b where m is the overlap
 * (total mass 1 - eps, uniform on the scaled simplex by exponential spacings)
 * and a, b are uniform distributions on a random split of the alphabet into
 * two nonempty disjoint parts. P - Q = eps (a - b) has zero sum and L1 norm
 * 2 eps, every mass stays in [0,1], and every pair at distance eps arises
 * this way.
 */
class PairSampler
{
public:
  explicit PairSampler(TVConstrainedSampler const &config);

  /// Fill p and q (resized to `support`) with the next pair.
  void next(int support, std::vector<double> &p, std::vector<double> &q);

  std::pair<FiniteDist, FiniteDist> next();

private:
  double uniform();
  double exponential();
  void   draw_simplex(std::span<double> out, double total);

  TVConstrainedSampler config_;
  std::mt19937_64      rng_;
  std::vector<int>     order_;
};

/// One pair from a fresh sampler.
std::pair<FiniteDist, FiniteDist> sample_pair(TVConstrainedSampler const &s);

/// A divergence-like measure with its closed-form extreme values at fixed total variation.
struct Measure
{
  using Eval = std::function<double(std::span<double const>, std::span<double const>)>;

  std::string                            name;
  Eval                                   eval;
  std::function<double(double)>          lower;        ///< closed-form minimum
  std::function<double(double)>          upper;        ///< closed-form maximum, if tight
  PairKind                               lower_attainer = PairKind::two_point;
  PairKind                               upper_attainer = PairKind::two_point;
  bool                                   open_domain    = false;  ///< eps = 1 excluded

  bool has_upper() const { return static_cast<bool>(upper); }
};

/// bhattacharyya, chernoff, capacitory, jeffreys, squared_hellinger (hellinger2), total_variation (tv).
Measure const &measure(std::string_view name);
std::vector<std::string> measure_names();

struct VerifyConfig
{
  std::uint64_t seed            = 1;
  double        violation_slack = 1e-9;
  double        attain_tol      = 1e-9;
  double        gap_threshold   = 5e-3;  ///< acceptance knob, not a mathematical claim
  double        grid_step       = 1e-3;  ///< step of the deterministic support-2/3 grids
  bool          use_grid        = true;
  int           min_support     = 2;
  int           max_support     = 8;
  unsigned      threads         = 0;     ///< 0 = hardware concurrency
};

struct Witness
{
  std::vector<double> p;
  std::vector<double> q;
  double              value;
};

struct VerifyReport
{
  std::string   measure;
  double        eps         = 0.0;
  std::size_t   n_samples   = 0;
  std::uint64_t stream_seed = 0;

  double closed_form = 0.0;            ///< lower bound
  double closed_form_upper = 0.0;      ///< upper bound when the measure has one

  double sample_min = 0.0;             ///< over the random pairs
  double sample_max = 0.0;
  double grid_min   = 0.0;             ///< over the support-2/3 grids
  double grid_max   = 0.0;
  double extremal   = 0.0;             ///< measure at the lower attainer
  double extremal_upper = 0.0;         ///< measure at the upper attainer

  std::size_t            evaluated  = 0;
  std::size_t            violations = 0;
  std::optional<Witness> witness;

  double empirical_min() const;
  double empirical_max() const;
  double gap() const;        ///< empirical_min - closed_form (grid min when the grid ran)
  double gap_upper() const;  ///< closed_form_upper - empirical_max

  bool has_upper = false;
  bool grid_ran  = false;
  bool no_violation = true;
  bool attained     = true;
  bool gap_ok       = true;

  bool pass() const { return no_violation && attained && gap_ok; }
};

/**
 * Check a closed form against random pairs, the deterministic support-2/3
 * grids and the designated extremal pair. `index` selects the RNG stream.
 */
VerifyReport verify_min(Measure const &m, double eps, std::size_t n_samples,
                        VerifyConfig const &config, std::uint64_t index = 0);

struct GridVerifyResult
{
  std::vector<VerifyReport> reports;
  BoundCurve                closed_form;
  BoundCurve                empirical_min;

  bool pass() const;
};

/// verify_min at every grid point; every eps is validated before any sampling starts.
GridVerifyResult grid_verify(Measure const &m, std::vector<double> const &eps_grid,
                             std::size_t n_samples, VerifyConfig const &config);

/// Pairs enumerated by the deterministic grids, passed to `visit(p, q)`.
void for_each_grid_pair(double eps, double step,
                        std::function<void(std::span<double const>, std::span<double const>)> const &visit);

}  // namespace divbound
