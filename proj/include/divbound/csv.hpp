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
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace divbound::csv {

/// 12 significant digits; infinities as `inf` / `-inf`.
std::string format_number(double v);

/// Empty string for an absent value.
std::string format_optional(std::optional<double> v);

/// Inverse of format_number; std::nullopt when the field is not numeric.
std::optional<double> parse_number(std::string_view field);

/// Header row plus data rows; `#` lines preceding the header are kept verbatim.
struct Table
{
  std::vector<std::string>              comments;
  std::vector<std::string>              header;
  std::vector<std::vector<std::string>> rows;
};

void  write(std::ostream &out, Table const &t);
Table read(std::istream &in);

/// Parse every numeric field and format it again.
Table renormalize(Table t);

}  // namespace divbound::csv
