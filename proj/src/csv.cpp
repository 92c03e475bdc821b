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

#include "divbound/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>

namespace divbound::csv {

namespace {

std::vector<std::string> split(std::string const &line)
{
  std::vector<std::string> out;
  std::size_t              start = 0;
  while (true)
  {
    auto const comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos)
    {
      return out;
    }
    start = comma + 1;
  }
}

void write_row(std::ostream &out, std::vector<std::string> const &row)
{
  for (std::size_t i = 0; i < row.size(); ++i)
  {
    if (i)
    {
      out << ',';
    }
    out << row[i];
  }
  out << '\n';
}

}  // namespace

std::string format_number(double v)
{
  if (std::isinf(v))
  {
    return v > 0 ? "inf" : "-inf";
  }
  if (std::isnan(v))
  {
    return "nan";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_optional(std::optional<double> v)
{
  return v ? format_number(*v) : std::string{};
}

std::optional<double> parse_number(std::string_view field)
{
  if (field == "inf")
  {
    return std::numeric_limits<double>::infinity();
  }
  if (field == "-inf")
  {
    return -std::numeric_limits<double>::infinity();
  }
  if (field.empty())
  {
    return std::nullopt;
  }
  double v{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size())
  {
    return std::nullopt;
  }
  return v;
}

void write(std::ostream &out, Table const &t)
{
  for (auto const &c : t.comments)
  {
    out << c << '\n';
  }
  write_row(out, t.header);
  for (auto const &r : t.rows)
  {
    write_row(out, r);
  }
}

Table read(std::istream &in)
{
  Table       t;
  std::string line;
  bool        have_header = false;
  while (std::getline(in, line))
  {
    if (!have_header && !line.empty() && line.front() == '#')
    {
      t.comments.push_back(line);
      continue;
    }
    if (!have_header)
    {
      t.header    = split(line);
      have_header = true;
      continue;
    }
    t.rows.push_back(split(line));
  }
  return t;
}

Table renormalize(Table t)
{
  for (auto &row : t.rows)
  {
    for (auto &field : row)
    {
      if (auto v = parse_number(field))
      {
        field = format_number(*v);
      }
    }
  }
  return t;
}

}  // namespace divbound::csv
