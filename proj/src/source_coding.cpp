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

#include "divbound/source_coding.hpp"

#include "divbound/fdiv_engine.hpp"
#include "divbound/tight_bounds.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

namespace divbound {

namespace {

// d^{-l}; exact whenever d^l is below 2^53.
double inverse_power(int d, int l)
{
  return 1.0 / std::pow(static_cast<double>(d), l);
}

/// Lengths of `code` laid out in the order of P's labels.
std::vector<int> lengths_for(FiniteDist const &P, CodeSpec const &code)
{
  if (code.alphabet().size() != P.size())
  {
    throw std::invalid_argument("code alphabet size does not match the source alphabet");
  }
  std::vector<int> out;
  out.reserve(P.size());
  for (auto const &label : P.labels())
  {
    out.push_back(code.length_of(label));
  }
  return out;
}

void require_strictly_positive(FiniteDist const &P, char const *what)
{
  for (std::size_t i = 0; i < P.size(); ++i)
  {
    if (!(P[i] > 0.0))
    {
      throw std::invalid_argument(std::string(what) + ": zero-mass symbol '" + P.label(i) + "'");
    }
  }
}

}  // namespace

double CodeSpec::kraft_sum() const
{
  double c = 0.0;
  for (int l : lengths_)
  {
    c += inverse_power(base_, l);
  }
  return c;
}

int CodeSpec::length_of(std::string const &label) const
{
  auto it = std::find(alphabet_.begin(), alphabet_.end(), label);
  if (it == alphabet_.end())
  {
    throw std::out_of_range("no codeword for symbol '" + label + "'");
  }
  return lengths_[static_cast<std::size_t>(it - alphabet_.begin())];
}

CodeSpec make_code(std::vector<std::string> alphabet, std::vector<int> lengths, int base)
{
  if (base < 2)
  {
    throw std::invalid_argument("code base must be >= 2");
  }
  if (alphabet.size() != lengths.size() || alphabet.empty())
  {
    throw std::invalid_argument("code alphabet and lengths must be nonempty and of equal size");
  }
  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < alphabet.size(); ++i)
  {
    if (!seen.insert(alphabet[i]).second)
    {
      throw std::invalid_argument("duplicate code symbol '" + alphabet[i] + "'");
    }
    if (lengths[i] < 1)
    {
      throw std::invalid_argument("codeword length for '" + alphabet[i] + "' must be positive");
    }
  }

  CodeSpec code;
  code.alphabet_ = std::move(alphabet);
  code.lengths_  = std::move(lengths);
  code.base_     = base;
  double const c = code.kraft_sum();
  if (c > 1.0 + kKraftSlack)
  {
    throw std::invalid_argument("Kraft sum " + std::to_string(c) + " exceeds 1");
  }
  return code;
}

int shannon_length(double p, int d)
{
  if (!(p > 0.0 && p <= 1.0))
  {
    throw std::invalid_argument("shannon_length: probability must be in (0,1]");
  }
  if (d < 2)
  {
    throw std::invalid_argument("shannon_length: base must be >= 2");
  }
  int l = std::max(1, static_cast<int>(std::ceil(-log_base(p, d))) - 1);
  while (inverse_power(d, l) > p)
  {
    ++l;
  }
  while (l > 1 && inverse_power(d, l - 1) <= p)
  {
    --l;
  }
  return l;
}

CodeSpec shannon_code(FiniteDist const &P, int d)
{
  require_strictly_positive(P, "shannon_code");
  std::vector<int> lengths;
  for (double p : P.mass())
  {
    lengths.push_back(shannon_length(p, d));
  }
  return make_code(P.labels(), std::move(lengths), d);
}

FiniteDist code_distribution(CodeSpec const &code)
{
  double const        c = code.kraft_sum();
  std::vector<double> q;
  for (int l : code.lengths())
  {
    q.push_back(inverse_power(code.base(), l) / c);
  }
  return make_dist(code.alphabet(), std::move(q));
}

std::vector<double> code_excess(FiniteDist const &P, CodeSpec const &code)
{
  auto const          lengths = lengths_for(P, code);
  std::vector<double> delta;
  for (std::size_t i = 0; i < P.size(); ++i)
  {
    delta.push_back(lengths[i] + log_base(P[i], code.base()));
  }
  return delta;
}

double redundancy(FiniteDist const &P, CodeSpec const &code)
{
  auto const delta = code_excess(P, code);
  double     r     = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i)
  {
    r += P[i] * delta[i];
  }
  return std::max(0.0, r);
}

IdentityCheck kl_identity_check(FiniteDist const &P, CodeSpec const &code)
{
  require_strictly_positive(P, "kl_identity_check");
  double const lhs = kl_divergence(P, code_distribution(code));
  double const rhs = redundancy(P, code) * std::log(code.base()) + std::log(code.kraft_sum());
  return {lhs, rhs};
}

namespace {

// E_P[delta d^{-delta}]
double excess_moment(FiniteDist const &P, CodeSpec const &code)
{
  auto const   delta = code_excess(P, code);
  double const log_d = std::log(code.base());
  double       e     = 0.0;
  for (std::size_t i = 0; i < P.size(); ++i)
  {
    e += P[i] * delta[i] * std::exp(-delta[i] * log_d);
  }
  return e;
}

}  // namespace

IdentityCheck dual_kl_identity_check(FiniteDist const &P, CodeSpec const &code)
{
  require_strictly_positive(P, "dual_kl_identity_check");
  double const c     = code.kraft_sum();
  double const log_d = std::log(code.base());
  double const lhs   = kl_divergence(code_distribution(code), P);
  double const rhs   = -std::log(c) - (log_d / c) * excess_moment(P, code);
  return {lhs, rhs};
}

double jeffreys_from_excess(FiniteDist const &P, CodeSpec const &code)
{
  require_strictly_positive(P, "jeffreys_from_excess");
  double const c     = code.kraft_sum();
  double const log_d = std::log(code.base());
  return 0.5 * (redundancy(P, code) * log_d - (log_d / c) * excess_moment(P, code));
}

L1Bounds l1_bounds_at(double x, double tol)
{
  if (!(x >= 0.0))
  {
    throw std::invalid_argument("l1_bounds_at: redundancy must be >= 0");
  }
  return {std::min(std::sqrt(2.0 * x), 2.0), 2.0 * inverse_exact_kl(x, tol),
          2.0 * inverse_jeffreys(x / 2.0, tol)};
}

bool CodingReport::consistent(double slack) const
{
  bool ok = actual_l1 <= bound_csiszar + slack && actual_l1 <= bound_tightened + slack &&
            bound_tightened <= bound_csiszar + slack;
  if (bound_jeffreys)
  {
    ok = ok && actual_l1 <= *bound_jeffreys + slack;
  }
  return ok;
}

CodingReport l1_bounds(FiniteDist const &P, CodeSpec const &code, double tol)
{
  require_strictly_positive(P, "l1_bounds");
  auto const       lengths = lengths_for(P, code);
  FiniteDist const Q       = code_distribution(code);
  int const        d       = code.base();

  CodingReport r;
  for (std::size_t i = 0; i < P.size(); ++i)
  {
    r.avg_length += P[i] * lengths[i];
  }
  r.entropy_d       = entropy_base(P, d);
  r.redundancy      = redundancy(P, code);
  r.redundancy_nats = r.redundancy * std::log(d);
  r.kraft_sum       = code.kraft_sum();
  r.kl_PQ           = kl_divergence(P, Q);
  r.kl_QP           = kl_divergence(Q, P);
  r.jeffreys_val    = 0.5 * (r.kl_PQ + r.kl_QP);
  r.actual_l1       = l1_distance(P, Q);

  r.delta_nonneg = true;
  for (std::size_t i = 0; i < P.size(); ++i)
  {
    r.delta_nonneg = r.delta_nonneg && lengths[i] >= shannon_length(P[i], d);
  }

  auto const b      = l1_bounds_at(r.redundancy_nats, tol);
  r.bound_csiszar   = b.csiszar;
  r.bound_tightened = b.tightened;
  if (r.delta_nonneg)
  {
    r.bound_jeffreys = b.jeffreys;
  }
  return r;
}

CodeSpec parse_lengths(std::istream &in, int base)
{
  std::vector<std::string> alphabet;
  std::vector<int>         lengths;
  std::string              line;
  std::size_t              lineno = 0;
  while (std::getline(in, line))
  {
    ++lineno;
    auto const first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#')
    {
      continue;
    }
    auto const tab = line.find('\t', first);
    if (tab == std::string::npos)
    {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected label<TAB>length");
    }
    std::string label = line.substr(first, tab - first);
    while (!label.empty() && label.back() == ' ')
    {
      label.pop_back();
    }
    auto const vb = line.find_first_not_of(" \t", tab);
    auto const ve = line.find_last_not_of(" \t\r");
    int        l{};
    if (vb == std::string::npos)
    {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": missing length");
    }
    auto [ptr, ec] = std::from_chars(line.data() + vb, line.data() + ve + 1, l);
    if (ec != std::errc{} || ptr != line.data() + ve + 1)
    {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": bad length");
    }
    alphabet.push_back(std::move(label));
    lengths.push_back(l);
  }
  return make_code(std::move(alphabet), std::move(lengths), base);
}

CodeSpec load_lengths(std::string const &path, int base)
{
  std::ifstream in(path);
  if (!in)
  {
    throw std::invalid_argument("cannot open lengths file '" + path + "'");
  }
  try
  {
    return parse_lengths(in, base);
  }
  catch (std::invalid_argument const &e)
  {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

}  // namespace divbound
