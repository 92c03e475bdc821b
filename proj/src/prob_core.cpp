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

#include "divbound/prob_core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace divbound {

double FiniteDist::mass_of(std::string const &label) const
{
  auto it = std::find(labels_.begin(), labels_.end(), label);
  return it == labels_.end() ? 0.0 : mass_[static_cast<std::size_t>(it - labels_.begin())];
}

FiniteDist make_dist(std::vector<std::string> labels, std::vector<double> mass,
                     Tolerances const &tol)
{
  if (labels.size() != mass.size())
  {
    throw std::invalid_argument("make_dist: " + std::to_string(labels.size()) + " labels but " +
                                std::to_string(mass.size()) + " masses");
  }
  if (mass.empty())
  {
    throw std::invalid_argument("make_dist: empty alphabet");
  }

  std::unordered_set<std::string> seen;
  for (auto const &l : labels)
  {
    if (!seen.insert(l).second)
    {
      throw std::invalid_argument("make_dist: duplicate label '" + l + "'");
    }
  }

  double sum = 0.0;
  for (std::size_t i = 0; i < mass.size(); ++i)
  {
    double &m = mass[i];
    if (!std::isfinite(m))
    {
      throw std::invalid_argument("make_dist: non-finite mass for '" + labels[i] + "'");
    }
    if (m < 0.0)
    {
      if (m < -tol.negative_clamp)
      {
        throw std::invalid_argument("make_dist: negative mass for '" + labels[i] + "'");
      }
      m = 0.0;
    }
    sum += m;
  }
  if (std::abs(sum - 1.0) > tol.normalization)
  {
    throw std::invalid_argument("make_dist: masses sum to " + std::to_string(sum));
  }
  if (sum != 1.0)
  {
    for (double &m : mass)
    {
      m /= sum;
    }
  }

  FiniteDist d;
  d.labels_ = std::move(labels);
  d.mass_   = std::move(mass);
  return d;
}

FiniteDist make_dist(std::vector<double> mass, Tolerances const &tol)
{
  std::vector<std::string> labels;
  labels.reserve(mass.size());
  for (std::size_t i = 0; i < mass.size(); ++i)
  {
    labels.push_back("x" + std::to_string(i + 1));
  }
  return make_dist(std::move(labels), std::move(mass), tol);
}

AlignedPair align(FiniteDist const &P, FiniteDist const &Q)
{
  AlignedPair out;
  if (P.labels() == Q.labels())
  {
    out.labels = P.labels();
    out.p.assign(P.mass().begin(), P.mass().end());
    out.q.assign(Q.mass().begin(), Q.mass().end());
    return out;
  }

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < P.size(); ++i)
  {
    index.emplace(P.label(i), i);
    out.labels.push_back(P.label(i));
    out.p.push_back(P[i]);
  }
  out.q.assign(out.p.size(), 0.0);
  for (std::size_t j = 0; j < Q.size(); ++j)
  {
    auto it = index.find(Q.label(j));
    if (it != index.end())
    {
      out.q[it->second] = Q[j];
    }
    else
    {
      out.labels.push_back(Q.label(j));
      out.p.push_back(0.0);
      out.q.push_back(Q[j]);
    }
  }
  return out;
}

double l1_distance(FiniteDist const &P, FiniteDist const &Q)
{
  auto const a = align(P, Q);
  double     s = 0.0;
  for (std::size_t i = 0; i < a.p.size(); ++i)
  {
    s += std::abs(a.p[i] - a.q[i]);
  }
  return s;
}

double total_variation(FiniteDist const &P, FiniteDist const &Q)
{
  return 0.5 * l1_distance(P, Q);
}

double binary_divergence(double p, double q)
{
  if (!(p >= 0.0 && p <= 1.0))
  {
    throw std::invalid_argument("binary_divergence: p outside [0,1]");
  }
  if (!(q > 0.0 && q < 1.0))
  {
    throw std::invalid_argument("binary_divergence: q outside (0,1)");
  }
  double r = 0.0;
  if (p > 0.0)
  {
    r += p * std::log(p / q);
  }
  if (p < 1.0)
  {
    r += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  }
  return r;
}

double log_base(double x, int d)
{
  return std::log2(x) / std::log2(static_cast<double>(d));
}

double entropy_base(FiniteDist const &P, int d)
{
  if (d < 2)
  {
    throw std::invalid_argument("entropy_base: base must be >= 2");
  }
  double h = 0.0;
  for (double m : P.mass())
  {
    if (m > 0.0)
    {
      h -= m * log_base(m, d);
    }
  }
  return h;
}

std::size_t support_size(FiniteDist const &P)
{
  return static_cast<std::size_t>(
      std::count_if(P.mass().begin(), P.mass().end(), [](double m) { return m > 0.0; }));
}

namespace {

std::string_view trim(std::string_view s)
{
  auto const ws = " \t\r\n";
  auto const b  = s.find_first_not_of(ws);
  if (b == std::string_view::npos)
  {
    return {};
  }
  auto const e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

FiniteDist parse_dist(std::istream &in, Tolerances const &tol)
{
  std::vector<std::string> labels;
  std::vector<double>      mass;
  std::string              line;
  std::size_t              lineno = 0;

  while (std::getline(in, line))
  {
    ++lineno;
    auto const body = trim(line);
    if (body.empty() || body.front() == '#')
    {
      continue;
    }
    auto const tab = body.find('\t');
    if (tab == std::string_view::npos)
    {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected label<TAB>probability");
    }
    auto const label = trim(body.substr(0, tab));
    auto const value = trim(body.substr(tab + 1));
    if (label.empty())
    {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": empty label");
    }
    double v{};
    auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc{} || ptr != value.data() + value.size())
    {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": bad probability '" +
                                  std::string(value) + "'");
    }
    labels.emplace_back(label);
    mass.push_back(v);
  }
  if (labels.empty())
  {
    throw std::invalid_argument("distribution file has no entries");
  }
  return make_dist(std::move(labels), std::move(mass), tol);
}

FiniteDist load_dist(std::string const &path, Tolerances const &tol)
{
  std::ifstream in(path);
  if (!in)
  {
    throw std::invalid_argument("cannot open distribution file '" + path + "'");
  }
  try
  {
    return parse_dist(in, tol);
  }
  catch (std::invalid_argument const &e)
  {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace divbound
