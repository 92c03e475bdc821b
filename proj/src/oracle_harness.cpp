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

#include "divbound/oracle_harness.hpp"

#include "divbound/fdiv_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

namespace divbound {

namespace {

constexpr double kInf       = std::numeric_limits<double>::infinity();
constexpr int    kMaxRetry  = 1000;
constexpr int    kMinSupport = 2;
constexpr int    kMaxSupport = 8;

std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double tv_of(std::span<double const> p, std::span<double const> q)
{
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
  {
    s += std::abs(p[i] - q[i]);
  }
  return 0.5 * s;
}

// Difference that treats equal infinities as zero.
double ext_diff(double a, double b)
{
  if (std::isinf(a) && std::isinf(b) && (a > 0) == (b > 0))
  {
    return 0.0;
  }
  return a - b;
}

Measure::Eval generator_eval(std::string_view name)
{
  FGenerator const *g = &generator(name);
  return [g](std::span<double const> p, std::span<double const> q) { return f_divergence(*g, p, q); };
}

std::vector<Measure> build_measures()
{
  using namespace generator_names;
  std::vector<Measure> out;

  Measure bh;
  bh.name  = "bhattacharyya";
  bh.eval  = [](std::span<double const> p, std::span<double const> q) { return bhattacharyya(p, q); };
  bh.lower = [](double e) { return bhattacharyya_bounds(e).first; };
  bh.upper = [](double e) { return bhattacharyya_bounds(e).second; };
  bh.lower_attainer = PairKind::three_point;
  bh.upper_attainer = PairKind::two_point;
  out.push_back(bh);

  Measure ch;
  ch.name  = "chernoff";
  ch.eval  = [](std::span<double const> p, std::span<double const> q) { return chernoff_information(p, q); };
  ch.lower = [](double e) { return chernoff_min(e); };
  out.push_back(ch);

  Measure cap;
  cap.name        = std::string(kCapacitory);
  cap.eval        = generator_eval(kCapacitory);
  cap.lower       = [](double e) { return capacitory_min(e); };
  cap.open_domain = true;
  out.push_back(cap);

  Measure jf;
  jf.name        = std::string(kJeffreys);
  jf.eval        = generator_eval(kJeffreys);
  jf.lower       = [](double e) { return jeffreys_min(e); };
  jf.open_domain = true;
  out.push_back(jf);

  for (auto name : {kSquaredHellinger, kTotalVariation})
  {
    Measure m;
    m.name = std::string(name);
    m.eval = generator_eval(name);
    FGenerator const *g = &generator(name);
    m.lower = [g](double e) { return symmetric_lower_bound(*g, e); };
    out.push_back(m);
  }
  return out;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index)
{
  return splitmix64(splitmix64(seed) ^ index);
}

PairSampler::PairSampler(TVConstrainedSampler const &config) : config_(config), rng_(config.seed)
{
  if (config.support_size < kMinSupport || config.support_size > kMaxSupport)
  {
    throw std::invalid_argument("sampler support size must be in [2, 8]");
  }
  require_eps(config.eps_target, false, "PairSampler");
}

double PairSampler::uniform()
{
  // 53 random bits, shifted off zero so the logarithm below stays finite.
  return (static_cast<double>(rng_() >> 11) + 0.5) * 0x1.0p-53;
}

double PairSampler::exponential()
{
  return -std::log(uniform());
}

void PairSampler::draw_simplex(std::span<double> out, double total)
{
  double s = 0.0;
  for (double &x : out)
  {
    x = exponential();
    s += x;
  }
  for (double &x : out)
  {
    x *= total / s;
  }
}

void PairSampler::next(int support, std::vector<double> &p, std::vector<double> &q)
{
  if (support < kMinSupport || support > kMaxSupport)
  {
    throw std::invalid_argument("sampler support size must be in [2, 8]");
  }
  double const eps = config_.eps_target;
  auto const   n   = static_cast<std::size_t>(support);
  p.assign(n, 0.0);
  q.assign(n, 0.0);
  order_.resize(n);

  std::vector<double> overlap(n), excess(n);
  for (int attempt = 0; attempt < kMaxRetry; ++attempt)
  {
    draw_simplex(overlap, 1.0 - eps);
    if (eps == 0.0)
    {
      p = overlap;
      q = overlap;
      return;
    }

    // Random split: the first k symbols of a shuffled order carry P's excess.
    for (std::size_t i = 0; i < n; ++i)
    {
      order_[i] = static_cast<int>(i);
    }
    for (std::size_t i = n - 1; i > 0; --i)
    {
      auto const j = static_cast<std::size_t>(uniform() * static_cast<double>(i + 1));
      std::swap(order_[i], order_[std::min(j, i)]);
    }
    auto const k = 1 + static_cast<std::size_t>(uniform() * static_cast<double>(n - 1));
    auto const cut = std::min(k, n - 1);

    std::span<double> ex(excess);
    draw_simplex(ex.subspan(0, cut), eps);
    draw_simplex(ex.subspan(cut), eps);

    for (std::size_t i = 0; i < n; ++i)
    {
      auto const s = static_cast<std::size_t>(order_[i]);
      p[s]         = overlap[s] + (i < cut ? excess[i] : 0.0);
      q[s]         = overlap[s] + (i < cut ? 0.0 : excess[i]);
    }
    if (std::abs(tv_of(p, q) - eps) <= config_.tol)
    {
      return;
    }
  }
  throw SamplerExhausted("no pair at total variation " + std::to_string(eps) + " after " +
                         std::to_string(kMaxRetry) + " draws");
}

std::pair<FiniteDist, FiniteDist> PairSampler::next()
{
  std::vector<double> p, q;
  next(config_.support_size, p, q);
  return {make_dist(std::move(p)), make_dist(std::move(q))};
}

std::pair<FiniteDist, FiniteDist> sample_pair(TVConstrainedSampler const &s)
{
  PairSampler sampler(s);
  return sampler.next();
}

Measure const &measure(std::string_view name)
{
  static std::vector<Measure> const all = build_measures();
  auto const key = canonical_generator_name(name);
  for (auto const &m : all)
  {
    if (m.name == key)
    {
      return m;
    }
  }
  throw std::invalid_argument("unknown measure '" + std::string(name) + "'");
}

std::vector<std::string> measure_names()
{
  return {"bhattacharyya", "chernoff", "capacitory", "jeffreys", "squared_hellinger", "total_variation"};
}

void for_each_grid_pair(double eps, double step,
                        std::function<void(std::span<double const>, std::span<double const>)> const &visit)
{
  auto const cells = static_cast<long>(std::llround(1.0 / step));

  // Two symbols: P = (p, 1-p), Q = (p-eps, 1-p+eps) for p in [eps, 1].
  double p2[2], q2[2];
  for (long i = 0;; ++i)
  {
    double const p = std::min(1.0, eps + static_cast<double>(i) / cells);
    p2[0] = p;
    p2[1] = 1.0 - p;
    q2[0] = std::max(0.0, p - eps);
    q2[1] = std::min(1.0, 1.0 - p + eps);
    visit(p2, q2);
    if (p >= 1.0)
    {
      break;
    }
  }

  // Three symbols with a single-atom excess on each side:
  // P = m + eps e1, Q = m + eps e3, m = (1-eps) s over the grid on the simplex.
  double p3[3], q3[3];
  for (long i = 0; i <= cells; ++i)
  {
    for (long j = 0; j <= cells - i; ++j)
    {
      double const s0 = static_cast<double>(i) / cells;
      double const s1 = static_cast<double>(j) / cells;
      double const s2 = static_cast<double>(cells - i - j) / cells;
      double const w  = 1.0 - eps;
      p3[0] = w * s0 + eps;
      p3[1] = w * s1;
      p3[2] = w * s2;
      q3[0] = w * s0;
      q3[1] = w * s1;
      q3[2] = w * s2 + eps;
      visit(p3, q3);
    }
  }
}

double VerifyReport::empirical_min() const
{
  return grid_ran ? std::min(sample_min, grid_min) : sample_min;
}

double VerifyReport::empirical_max() const
{
  return grid_ran ? std::max(sample_max, grid_max) : sample_max;
}

double VerifyReport::gap() const
{
  return ext_diff(empirical_min(), closed_form);
}

double VerifyReport::gap_upper() const
{
  return has_upper ? ext_diff(closed_form_upper, empirical_max()) : 0.0;
}

VerifyReport verify_min(Measure const &m, double eps, std::size_t n_samples,
                        VerifyConfig const &config, std::uint64_t index)
{
  require_eps(eps, m.open_domain, m.name.c_str());
  if (config.min_support < kMinSupport || config.max_support > kMaxSupport ||
      config.min_support > config.max_support)
  {
    throw std::invalid_argument("verify_min: support range must lie in [2, 8]");
  }

  VerifyReport r;
  r.measure     = m.name;
  r.eps         = eps;
  r.n_samples   = n_samples;
  r.stream_seed = stream_seed(config.seed, index);
  r.closed_form = m.lower(eps);
  r.has_upper   = m.has_upper();
  if (r.has_upper)
  {
    r.closed_form_upper = m.upper(eps);
  }
  r.sample_min = r.grid_min = kInf;
  r.sample_max = r.grid_max = -kInf;

  auto check = [&](std::span<double const> p, std::span<double const> q, double v) {
    ++r.evaluated;
    bool const below = v < r.closed_form - config.violation_slack;
    bool const above = r.has_upper && v > r.closed_form_upper + config.violation_slack;
    if (below || above)
    {
      ++r.violations;
      if (!r.witness)
      {
        r.witness = Witness{{p.begin(), p.end()}, {q.begin(), q.end()}, v};
      }
    }
  };

  PairSampler         sampler({config.min_support, eps, r.stream_seed, 1e-9});
  std::vector<double> p, q;
  int const           span = config.max_support - config.min_support + 1;
  for (std::size_t s = 0; s < n_samples; ++s)
  {
    sampler.next(config.min_support + static_cast<int>(s % static_cast<std::size_t>(span)), p, q);
    double const v = m.eval(p, q);
    r.sample_min   = std::min(r.sample_min, v);
    r.sample_max   = std::max(r.sample_max, v);
    check(p, q, v);
  }

  if (config.use_grid)
  {
    r.grid_ran = true;
    for_each_grid_pair(eps, config.grid_step, [&](std::span<double const> gp, std::span<double const> gq) {
      double const v = m.eval(gp, gq);
      r.grid_min     = std::min(r.grid_min, v);
      r.grid_max     = std::max(r.grid_max, v);
      check(gp, gq, v);
    });
  }

  auto const lo_pair = extremal_pair(eps, m.lower_attainer);
  r.extremal         = m.eval(lo_pair.P.mass(), lo_pair.Q.mass());
  r.attained         = std::abs(ext_diff(r.extremal, r.closed_form)) <= config.attain_tol;
  if (r.has_upper)
  {
    auto const hi_pair = extremal_pair(eps, m.upper_attainer);
    r.extremal_upper   = m.eval(hi_pair.P.mass(), hi_pair.Q.mass());
    r.attained = r.attained && std::abs(ext_diff(r.extremal_upper, r.closed_form_upper)) <= config.attain_tol;
  }

  r.no_violation = r.violations == 0;
  r.gap_ok       = r.gap() <= config.gap_threshold && r.gap_upper() <= config.gap_threshold;
  return r;
}

bool GridVerifyResult::pass() const
{
  return std::all_of(reports.begin(), reports.end(), [](VerifyReport const &r) { return r.pass(); });
}

GridVerifyResult grid_verify(Measure const &m, std::vector<double> const &eps_grid, std::size_t n_samples,
                             VerifyConfig const &config)
{
  for (double e : eps_grid)
  {
    require_eps(e, m.open_domain, m.name.c_str());
  }

  GridVerifyResult out;
  out.reports.resize(eps_grid.size());

  unsigned workers = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  workers          = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(1, eps_grid.size())));

  std::atomic<std::size_t> next{0};
  std::exception_ptr       failure;
  std::atomic<bool>        failed{false};
  auto                     work = [&] {
    for (std::size_t i = next++; i < eps_grid.size() && !failed; i = next++)
    {
      try
      {
        out.reports[i] = verify_min(m, eps_grid[i], n_samples, config, i);
      }
      catch (...)
      {
        if (!failed.exchange(true))
        {
          failure = std::current_exception();
        }
      }
    }
  };

  if (workers <= 1)
  {
    work();
  }
  else
  {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
    {
      pool.emplace_back(work);
    }
    for (auto &t : pool)
    {
      t.join();
    }
  }
  if (failure)
  {
    std::rethrow_exception(failure);
  }

  out.closed_form.name   = m.name + "_closed_form";
  out.empirical_min.name = m.name + "_empirical_min";
  for (auto const &r : out.reports)
  {
    out.closed_form.points.push_back({r.eps, r.closed_form});
    out.empirical_min.points.push_back({r.eps, r.empirical_min()});
  }
  return out;
}

}  // namespace divbound
