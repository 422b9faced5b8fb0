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

#include <string>
#include <string_view>
#include <vector>

#include "junction/sync/association.hpp"

namespace junction::io {

inline constexpr std::string_view kSyncHeader = "camera_id,seq,trigger_utc_ns,arrival_ns";

/// Header line plus one LF-terminated row per stamp, in the given order.
std::string write_sync_csv(const std::vector<sync::FrameStamp>& stamps);

/// Throws ParseError with the line (1-based) and column of the first bad
/// field.
std::vector<sync::FrameStamp> read_sync_csv(std::string_view text);

}  // namespace junction::io
