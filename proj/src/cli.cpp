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

#include "divbound/cli.hpp"

#include "divbound/csv.hpp"
#include "divbound/fdiv_engine.hpp"
#include "divbound/jensen_fdiv.hpp"
#include "divbound/oracle_harness.hpp"
#include "divbound/source_coding.hpp"
#include "divbound/tight_bounds.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace divbound::cli {

namespace {

using csv::format_number;

std::vector<std::string_view> split_colon(std::string_view spec)
{
  std::vector<std::string_view> parts;
  std::size_t                   start = 0;
  while (true)
  {
    auto const c = spec.find(':', start);
    parts.push_back(spec.substr(start, c == std::string_view::npos ? std::string_view::npos : c - start));
    if (c == std::string_view::npos)
    {
      return parts;
    }
    start = c + 1;
  }
}

double to_double(std::string_view s, std::string_view spec)
{
  double v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
  {
    throw UsageError("bad number '" + std::string(s) + "' in grid '" + std::string(spec) + "'");
  }
  return v;
}

/// Tabulated closed-form curve for the `bounds` subcommand.
std::function<double(double)> bound_function(std::string const &name, Tolerances const &tol)
{
  auto const key = canonical_generator_name(name);
  if (key == "bhattacharyya" || key == "bhattacharyya_lower")
  {
    return [](double e) { return bhattacharyya_bounds(e).first; };
  }
  if (key == "bhattacharyya_upper")
  {
    return [](double e) { return bhattacharyya_bounds(e).second; };
  }
  if (key == "chernoff")
  {
    return chernoff_min;
  }
  if (key == generator_names::kCapacitory)
  {
    return capacitory_min;
  }
  if (key == generator_names::kJeffreys)
  {
    return jeffreys_min;
  }
  if (key == generator_names::kKl)
  {
    return [s = tol.search](double e) { return exact_kl_min(e, s); };
  }
  if (key == "pinsker")
  {
    return [](double e) { return 2.0 * e * e; };
  }
  if (GeneratorRegistry::instance().contains(key))
  {
    FGenerator const *g = &generator(key);
    if (!g->symmetry_constant)
    {
      throw UsageError("no closed-form bound for asymmetric generator '" + name + "'");
    }
    return [g](double e) { return symmetric_lower_bound(*g, e); };
  }
  throw UsageError("unknown measure '" + name + "'");
}

int cmd_divergence(CliConfig const &c, std::ostream &out)
{
  FiniteDist const P = load_dist(c.p_path, c.tol);
  FiniteDist const Q = load_dist(c.q_path, c.tol);

  double value = 0.0;
  if (c.name == "bhattacharyya")
  {
    value = bhattacharyya(P, Q);
  }
  else if (c.name == "chernoff")
  {
    value = chernoff_information(P, Q, c.tol.search);
  }
  else
  {
    if (!GeneratorRegistry::instance().contains(c.name))
    {
      throw UsageError("unknown divergence '" + c.name + "'");
    }
    value = f_divergence(generator(c.name), P, Q);
  }
  csv::write(out, {{}, {"measure", "value"}, {{c.name, format_number(value)}}});
  return kExitOk;
}

int cmd_bounds(CliConfig const &c, std::ostream &out)
{
  auto const grid = parse_linear_grid(c.grid);
  auto const fn   = bound_function(c.name, c.tol);

  BoundCurve curve{c.name, {}};
  for (double e : grid)
  {
    try
    {
      curve.points.push_back({e, fn(e)});
    }
    catch (std::invalid_argument const &ex)
    {
      throw UsageError(ex.what());
    }
  }
  csv::Table t{{}, {"eps", "value"}, {}};
  for (auto const &pt : curve.points)
  {
    t.rows.push_back({format_number(pt.eps), format_number(pt.value)});
  }
  csv::write(out, t);
  return kExitOk;
}

int cmd_sandwich(CliConfig const &c, std::ostream &out, std::ostream &err)
{
  if (!GeneratorRegistry::instance().contains(c.name))
  {
    throw UsageError("unknown generator '" + c.name + "'");
  }
  FiniteDist const P = load_dist(c.p_path, c.tol);
  FiniteDist const Q = load_dist(c.q_path, c.tol);
  auto const       r = sandwich(generator(c.name), P, Q);

  csv::write(out, {{},
                   {"r_min", "r_max", "left", "middle", "right", "chi2"},
                   {{format_number(r.r_min), format_number(r.r_max), format_number(r.left),
                     format_number(r.middle), format_number(r.right), format_number(r.chi2)}}});
  if (!r.diagnostic.empty())
  {
    err << "sandwich: " << r.diagnostic << '\n';
  }
  if (!r.ordered(c.tol_identity))
  {
    err << "sandwich: ordering left <= middle <= right violated\n";
    return kExitCheck;
  }
  return kExitOk;
}

int cmd_sourcecode(CliConfig const &c, std::ostream &out, std::ostream &err)
{
  FiniteDist const P    = load_dist(c.dist_path, c.tol);
  CodeSpec const   code = c.lengths_path.empty() ? shannon_code(P, c.base) : load_lengths(c.lengths_path, c.base);
  auto const       r    = l1_bounds(P, code, c.tol.search);

  csv::write(out, {{},
                   {"avg_length", "entropy_d", "redundancy", "redundancy_nats", "kraft_sum", "kl_PQ", "kl_QP",
                    "jeffreys", "actual_l1", "bound_csiszar", "bound_tightened", "bound_jeffreys", "delta_nonneg"},
                   {{format_number(r.avg_length), format_number(r.entropy_d), format_number(r.redundancy),
                     format_number(r.redundancy_nats), format_number(r.kraft_sum), format_number(r.kl_PQ),
                     format_number(r.kl_QP), format_number(r.jeffreys_val), format_number(r.actual_l1),
                     format_number(r.bound_csiszar), format_number(r.bound_tightened),
                     csv::format_optional(r.bound_jeffreys), r.delta_nonneg ? "1" : "0"}}});

  int status = kExitOk;
  if (!r.consistent(c.tol.check))
  {
    err << "sourcecode: a bound is below the actual L1 distance\n";
    status = kExitCheck;
  }
  auto const direct = kl_identity_check(P, code);
  auto const dual   = dual_kl_identity_check(P, code);
  if (std::abs(direct.lhs - direct.rhs) > c.tol_identity || std::abs(dual.lhs - dual.rhs) > c.tol_identity)
  {
    err << "sourcecode: relative entropy identity mismatch\n";
    status = kExitCheck;
  }
  return status;
}

int cmd_sourcecode_sweep(CliConfig const &c, std::ostream &out)
{
  auto const grid = parse_log_grid(c.grid);
  csv::Table t{{}, {"redundancy_nats", "csiszar", "tightened", "jeffreys", "jeffreys_over_csiszar"}, {}};
  for (double x : grid)
  {
    auto const b = l1_bounds_at(x, c.tol.search);
    t.rows.push_back({format_number(x), format_number(b.csiszar), format_number(b.tightened),
                      format_number(b.jeffreys), format_number(b.jeffreys / b.csiszar)});
  }
  csv::write(out, t);
  return kExitOk;
}

int cmd_verify(CliConfig const &c, std::ostream &out, std::ostream &err)
{
  Measure const *m = nullptr;
  try
  {
    m = &measure(c.name);
  }
  catch (std::invalid_argument const &e)
  {
    throw UsageError(e.what());
  }
  auto const grid = parse_linear_grid(c.grid);
  for (double e : grid)
  {
    try
    {
      require_eps(e, m->open_domain, m->name.c_str());
    }
    catch (std::invalid_argument const &ex)
    {
      throw UsageError(ex.what());
    }
  }

  VerifyConfig vc;
  vc.seed            = c.seed;
  vc.violation_slack = c.tol.check;
  vc.attain_tol      = c.tol.check;
  vc.gap_threshold   = c.tol_gap;
  vc.grid_step       = c.grid_step;
  vc.use_grid        = c.use_grid;
  vc.threads         = c.threads;

  auto const result = grid_verify(*m, grid, c.samples, vc);
  bool const pass   = result.pass();

  csv::Table t;
  t.comments = {"# measure=" + m->name, "# rng=" + std::string(kRngAlgorithm) + " seed=" + std::to_string(c.seed),
                "# samples_per_point=" + std::to_string(c.samples) +
                    " grid_step=" + format_number(c.use_grid ? c.grid_step : 0.0),
                std::string("# result=") + (pass ? "PASS" : "FAIL")};
  t.header   = {"eps",          "closed_form", "empirical_min", "gap", "closed_form_upper", "empirical_max",
                "extremal", "violations", "status"};
  for (auto const &r : result.reports)
  {
    t.rows.push_back({format_number(r.eps), format_number(r.closed_form), format_number(r.empirical_min()),
                      format_number(r.gap()), r.has_upper ? format_number(r.closed_form_upper) : "",
                      r.has_upper ? format_number(r.empirical_max()) : "", format_number(r.extremal),
                      std::to_string(r.violations), r.pass() ? "pass" : "fail"});
    if (r.witness)
    {
      std::ostringstream w;
      w << "verify: eps=" << format_number(r.eps) << " witness value " << format_number(r.witness->value) << " P=(";
      for (std::size_t i = 0; i < r.witness->p.size(); ++i)
      {
        w << (i ? "," : "") << format_number(r.witness->p[i]);
      }
      w << ") Q=(";
      for (std::size_t i = 0; i < r.witness->q.size(); ++i)
      {
        w << (i ? "," : "") << format_number(r.witness->q[i]);
      }
      w << ")";
      err << w.str() << '\n';
    }
  }
  csv::write(out, t);
  return pass ? kExitOk : kExitCheck;
}

}  // namespace

std::vector<double> parse_linear_grid(std::string_view spec)
{
  auto const parts = split_colon(spec);
  if (parts.size() != 3)
  {
    throw UsageError("grid '" + std::string(spec) + "' must be start:step:stop");
  }
  double const start = to_double(parts[0], spec);
  double const step  = to_double(parts[1], spec);
  double const stop  = to_double(parts[2], spec);
  if (!(step > 0.0) || stop < start)
  {
    throw UsageError("grid '" + std::string(spec) + "' must have step > 0 and stop >= start");
  }
  auto const          n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    double v = start + static_cast<double>(i) * step;
    if (std::abs(v - stop) <= 1e-12 * std::max(1.0, std::abs(stop)))
    {
      v = stop;
    }
    out.push_back(v);
  }
  return out;
}

std::vector<double> parse_log_grid(std::string_view spec)
{
  auto const parts = split_colon(spec);
  if (parts.size() != 3)
  {
    throw UsageError("grid '" + std::string(spec) + "' must be start:stop:npoints");
  }
  double const start = to_double(parts[0], spec);
  double const stop  = to_double(parts[1], spec);
  double const count = to_double(parts[2], spec);
  if (!(start > 0.0) || stop < start || count < 1.0 || count != std::floor(count))
  {
    throw UsageError("grid '" + std::string(spec) + "' needs 0 < start <= stop and an integer point count");
  }
  auto const          n = static_cast<std::size_t>(count);
  std::vector<double> out;
  if (n == 1)
  {
    return {start};
  }
  double const ratio = std::log(stop / start);
  for (std::size_t i = 0; i < n; ++i)
  {
    out.push_back(i + 1 == n ? stop : start * std::exp(ratio * static_cast<double>(i) / static_cast<double>(n - 1)));
  }
  if (std::adjacent_find(out.begin(), out.end(), std::greater_equal<>{}) != out.end())
  {
    throw UsageError("grid '" + std::string(spec) + "' is not strictly increasing");
  }
  return out;
}

std::optional<CliConfig> parse_args(int argc, char const *const *argv, std::ostream &out)
{
  CliConfig c;
  CLI::App  app{"Divergence bounds at fixed total variation distance, source coding bounds and "
               "refined Jensen inequalities"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App *sub) {
    sub->add_option("--out", c.out_path, "Write CSV here instead of standard output");
    sub->add_option("--tol-norm", c.tol.normalization, "Allowed |sum - 1| of input distributions")
        ->capture_default_str();
    sub->add_option("--tol-search", c.tol.search, "Golden-section width and bisection residual")
        ->capture_default_str();
    sub->add_option("--tol-check", c.tol.check, "Slack when comparing a value against a bound")
        ->capture_default_str();
  };

  auto *div = app.add_subcommand("divergence", "Evaluate one divergence between two distribution files");
  div->add_option("--divergence", c.name,
                  "kl|dual_kl|tv|hellinger2|jeffreys|capacitory|chi2|dual_chi2|bhattacharyya|chernoff")
      ->required();
  div->add_option("--p", c.p_path, "Distribution file for P")->required();
  div->add_option("--q", c.q_path, "Distribution file for Q")->required();
  add_common(div);

  auto *bounds = app.add_subcommand("bounds", "Tabulate a closed-form bound over a total variation grid");
  bounds->add_option("--measure", c.name,
                     "jeffreys|capacitory|chernoff|bhattacharyya_lower|bhattacharyya_upper|hellinger2|tv|kl|pinsker")
      ->required();
  bounds->add_option("--grid", c.grid, "start:step:stop")->required();
  add_common(bounds);

  auto *sw = app.add_subcommand("sandwich", "Three terms of the refined Jensen inequality");
  sw->add_option("--f", c.name, "Generator f (certified: dual_kl, dual_chi2)")->required();
  sw->add_option("--p", c.p_path, "Distribution file for P")->required();
  sw->add_option("--q", c.q_path, "Distribution file for Q")->required();
  sw->add_option("--tol-identity", c.tol_identity, "Slack on the inequality ordering")->capture_default_str();
  add_common(sw);

  auto *sc = app.add_subcommand("sourcecode", "L1 bounds between a source and its code distribution");
  sc->add_option("--dist", c.dist_path, "Source distribution file")->required();
  sc->add_option("--base", c.base, "Code alphabet size d")->capture_default_str()->check(CLI::Range(2, 1 << 16));
  sc->add_option("--lengths", c.lengths_path, "label<TAB>length file; Shannon code when omitted");
  sc->add_option("--tol-identity", c.tol_identity, "Slack on the relative entropy identities")
      ->capture_default_str();
  add_common(sc);

  auto *sweep = app.add_subcommand("sourcecode-sweep", "Bound curves over log-spaced redundancy values (nats)");
  sweep->add_option("--grid", c.grid, "start:stop:npoints")->required();
  add_common(sweep);

  auto *ver = app.add_subcommand("verify", "Check a closed-form bound against sampled and gridded pairs");
  ver->add_option("--measure", c.name, "bhattacharyya|chernoff|capacitory|jeffreys|hellinger2|tv")->required();
  ver->add_option("--grid", c.grid, "start:step:stop")->required();
  ver->add_option("--samples", c.samples, "Random pairs per grid point")->capture_default_str();
  ver->add_option("--seed", seed, "RNG seed (falls back to DIVBOUND_SEED, then 1)");
  ver->add_option("--tol-gap", c.tol_gap, "Allowed gap between empirical extreme and closed form")
      ->capture_default_str();
  ver->add_option("--grid-step", c.grid_step, "Step of the support-2/3 grids")->capture_default_str();
  ver->add_flag("!--no-grid", c.use_grid, "Skip the support-2/3 grids");
  ver->add_option("--threads", c.threads, "Worker threads (0 = all cores)")->capture_default_str();
  add_common(ver);

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::CallForHelp const &)
  {
    out << app.help();
    return std::nullopt;
  }
  catch (CLI::CallForAllHelp const &)
  {
    out << app.help("", CLI::AppFormatMode::All);
    return std::nullopt;
  }
  catch (CLI::ParseError const &e)
  {
    throw UsageError(e.what());
  }

  if (*div)
  {
    c.subcommand = Subcommand::divergence;
  }
  else if (*bounds)
  {
    c.subcommand = Subcommand::bounds;
  }
  else if (*sw)
  {
    c.subcommand = Subcommand::sandwich;
  }
  else if (*sc)
  {
    c.subcommand = Subcommand::sourcecode;
  }
  else if (*sweep)
  {
    c.subcommand = Subcommand::sourcecode_sweep;
  }
  else
  {
    c.subcommand = Subcommand::verify;
  }

  if (seed)
  {
    c.seed = *seed;
  }
  else if (char const *env = std::getenv("DIVBOUND_SEED"))
  {
    std::string_view s{env};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), c.seed);
    if (ec != std::errc{} || ptr != s.data() + s.size())
    {
      throw UsageError("DIVBOUND_SEED is not an unsigned integer");
    }
  }
  return c;
}

int run(CliConfig const &config, std::ostream &out, std::ostream &err)
{
  std::ofstream file;
  std::ostream *sink = &out;
  if (!config.out_path.empty())
  {
    file.open(config.out_path);
    if (!file)
    {
      throw UsageError("cannot open output file '" + config.out_path + "'");
    }
    sink = &file;
  }

  switch (config.subcommand)
  {
  case Subcommand::divergence:
    return cmd_divergence(config, *sink);
  case Subcommand::bounds:
    return cmd_bounds(config, *sink);
  case Subcommand::sandwich:
    return cmd_sandwich(config, *sink, err);
  case Subcommand::sourcecode:
    return cmd_sourcecode(config, *sink, err);
  case Subcommand::sourcecode_sweep:
    return cmd_sourcecode_sweep(config, *sink);
  case Subcommand::verify:
    return cmd_verify(config, *sink, err);
  }
  return kExitUsage;
}

int main_entry(int argc, char const *const *argv, std::ostream &out, std::ostream &err)
{
  try
  {
    auto const config = parse_args(argc, argv, out);
    if (!config)
    {
      return kExitOk;
    }
    return run(*config, out, err);
  }
  catch (std::invalid_argument const &e)
  {
    // Malformed input files, unknown names, Kraft violations and bad grids all land here.
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  catch (std::exception const &e)
  {
    err << "error: " << e.what() << '\n';
    return kExitCheck;
  }
}

}  // namespace divbound::cli
