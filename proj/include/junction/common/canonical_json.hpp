// Copyright 2026 The Junction Sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <json.hpp>
#include <string>
#include <string_view>

namespace junction {

using Json = nlohmann::json;

/// Canonical text form used for every structured file: keys sorted, two-space
/// indentation, floating-point values printed with "%.6f", arrays of scalars on
/// one line, trailing newline. Equal documents always give identical bytes.
std::string canonical_dump(const Json& value);

/// Single-line variant of canonical_dump (same number formatting), used for
/// line-delimited files.
std::string canonical_dump_line(const Json& value);

/// Parses text, converting parser failures into ParseError with line and
/// column.
Json parse_json(std::string_view text);

}  // namespace junction
