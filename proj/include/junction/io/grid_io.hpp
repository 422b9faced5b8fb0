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

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "junction/coverage/grid.hpp"

namespace junction::io {

inline constexpr std::uint16_t kGridFormatVersion = 1;

/// CGRD: little-endian header (magic "CGRD", u16 version, u16 reserved,
/// f64 origin x, f64 origin y, f64 cell size, i32 cols, i32 rows,
/// u64 scenario version), 11-byte cell records (u64 visible mask, u8 mono
/// count, u16 stereo pairs) in row-major order, then a u32 CRC-32 of all
/// preceding bytes.
std::vector<std::uint8_t> encode_grid(const coverage::CoverageGrid& grid, std::uint64_t scenario_version = 0);

struct DecodedGrid {
  coverage::CoverageGrid grid;
  std::uint64_t scenario_version = 0;
};

/// Throws CorruptFile with the byte offset of the first inconsistency and
/// UnsupportedVersion for an unknown version.
DecodedGrid decode_grid(const std::vector<std::uint8_t>& bytes);

void save_grid(const coverage::CoverageGrid& grid, const std::filesystem::path& path,
               std::uint64_t scenario_version = 0);
coverage::CoverageGrid load_grid(const std::filesystem::path& path);

/// One row per cell: col,row,x_m,y_m,visible_mask,mono_count,stereo_pairs.
std::string grid_to_csv(const coverage::CoverageGrid& grid);

}  // namespace junction::io
