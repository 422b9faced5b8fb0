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

#include "junction/common/canonical_json.hpp"

#include <cmath>
#include <cstdio>

#include "junction/common/error.hpp"

namespace junction {

namespace {

std::string format_float(double v) {
  if (!std::isfinite(v)) throw InvalidArgument("cannot serialize non-finite number");
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

bool is_scalar_array(const Json& v) {
  if (!v.is_array()) return false;
  for (const auto& e : v) {
    if (e.is_object() || e.is_array()) return false;
  }
  return true;
}

void dump(const Json& v, std::string& out, int indent, bool pretty) {
  const auto newline = [&](int level) {
    if (!pretty) return;
    out += '\n';
    out.append(static_cast<std::size_t>(level) * 2, ' ');
  };
  switch (v.type()) {
    case Json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(indent + 1);
        out += Json(it.key()).dump();
        out += pretty ? ": " : ":";
        dump(it.value(), out, indent + 1, pretty);
      }
      newline(indent);
      out += '}';
      return;
    }
    case Json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      const bool inline_array = !pretty || is_scalar_array(v);
      out += '[';
      bool first = true;
      for (const auto& e : v) {
        if (!first) out += inline_array && pretty ? ", " : ",";
        first = false;
        if (!inline_array) newline(indent + 1);
        dump(e, out, indent + 1, pretty);
      }
      if (!inline_array) newline(indent);
      out += ']';
      return;
    }
    case Json::value_t::number_float:
      out += format_float(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

std::string canonical_dump(const Json& value) {
  std::string out;
  dump(value, out, 0, true);
  out += '\n';
  return out;
}

std::string canonical_dump_line(const Json& value) {
  std::string out;
  dump(value, out, 0, false);
  return out;
}

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(e.what(), line, column);
  }
}

}  // namespace junction
