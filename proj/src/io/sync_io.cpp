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

#include "junction/io/sync_io.hpp"

#include <charconv>

#include "junction/common/error.hpp"

namespace junction::io {

std::string write_sync_csv(const std::vector<sync::FrameStamp>& stamps) {
  std::string out(kSyncHeader);
  out += '\n';
  for (const auto& s : stamps) {
    out += std::to_string(s.camera_id) + ',' + std::to_string(s.seq) + ',' + std::to_string(s.trigger_utc_ns) +
           ',' + std::to_string(s.arrival_ns) + '\n';
  }
  return out;
}

std::vector<sync::FrameStamp> read_sync_csv(std::string_view text) {
  std::vector<sync::FrameStamp> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) throw ParseError("missing final line feed", line_no + 1, text.size() - pos + 1);
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line_no == 1) {
      if (line != kSyncHeader) throw ParseError("expected header '" + std::string(kSyncHeader) + "'", 1, 1);
      continue;
    }
    std::int64_t fields[4];
    std::size_t col = 0;
    for (int k = 0; k < 4; ++k) {
      const std::size_t stop = k < 3 ? line.find(',', col) : line.size();
      if (stop == std::string_view::npos) throw ParseError("expected 4 fields", line_no, line.size() + 1);
      const auto* first = line.data() + col;
      const auto* last = line.data() + stop;
      const auto res = std::from_chars(first, last, fields[k]);
      if (res.ec != std::errc() || res.ptr != last || first == last) {
        throw ParseError("expected an integer", line_no, col + 1);
      }
      col = stop + 1;
    }
    out.push_back({static_cast<int>(fields[0]), fields[1], fields[2], fields[3]});
  }
  if (line_no == 0) throw ParseError("empty sync file", 1, 1);
  return out;
}

}  // namespace junction::io
