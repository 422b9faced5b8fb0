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

#include "junction/io/grid_io.hpp"

#include <cstdio>
#include <cstring>

#include "junction/common/digest.hpp"
#include "junction/common/error.hpp"
#include "junction/io/files.hpp"

namespace junction::io {

namespace {

constexpr char kMagic[4] = {'C', 'G', 'R', 'D'};
constexpr std::size_t kHeaderBytes = 4 + 2 + 2 + 8 * 3 + 4 * 2 + 8;
constexpr std::size_t kCellBytes = 8 + 1 + 2;

}  // namespace

std::vector<std::uint8_t> encode_grid(const coverage::CoverageGrid& grid, std::uint64_t scenario_version) {
  if (grid.cells.size() != grid.spec.cell_count()) {
    throw InvalidArgument("grid cell count does not match its spec");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderBytes + grid.cells.size() * kCellBytes + 4);
  out.insert(out.end(), kMagic, kMagic + 4);
  put_u16(out, kGridFormatVersion);
  put_u16(out, 0);
  put_f64(out, grid.spec.origin_m.x());
  put_f64(out, grid.spec.origin_m.y());
  put_f64(out, grid.spec.cell_m);
  put_u32(out, static_cast<std::uint32_t>(grid.spec.cols));
  put_u32(out, static_cast<std::uint32_t>(grid.spec.rows));
  put_u64(out, scenario_version);
  for (const auto& c : grid.cells) {
    put_u64(out, c.visible_mask);
    out.push_back(c.mono_count);
    put_u16(out, c.stereo_pairs);
  }
  put_u32(out, crc32(out));
  return out;
}

DecodedGrid decode_grid(const std::vector<std::uint8_t>& bytes) {
  ByteReader r(bytes);
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw CorruptFile("not a CGRD grid file", 0);
  }
  r.skip(4);
  const auto version = r.u16();
  if (version != kGridFormatVersion) {
    throw UnsupportedVersion("grid format version " + std::to_string(version) + " is not supported");
  }
  r.u16();
  DecodedGrid d;
  auto& spec = d.grid.spec;
  spec.origin_m.x() = r.f64();
  spec.origin_m.y() = r.f64();
  const std::size_t cell_offset = r.offset();
  spec.cell_m = r.f64();
  if (!(spec.cell_m > 0.0)) throw CorruptFile("cell size must be positive", cell_offset);
  const std::size_t dims_offset = r.offset();
  spec.cols = static_cast<std::int32_t>(r.u32());
  spec.rows = static_cast<std::int32_t>(r.u32());
  if (spec.cols < 0 || spec.rows < 0) throw CorruptFile("negative grid dimensions", dims_offset);
  d.scenario_version = r.u64();
  const std::size_t expected = kHeaderBytes + spec.cell_count() * kCellBytes + 4;
  if (bytes.size() != expected) {
    throw CorruptFile("grid file size " + std::to_string(bytes.size()) + " does not match header (" +
                          std::to_string(expected) + ")",
                      std::min(bytes.size(), expected));
  }
  d.grid.cells.resize(spec.cell_count());
  for (auto& c : d.grid.cells) {
    c.visible_mask = r.u64();
    c.mono_count = r.u8();
    c.stereo_pairs = r.u16();
  }
  const std::size_t crc_offset = r.offset();
  const std::uint32_t stored = r.u32();
  const std::uint32_t actual = crc32(std::span(bytes.data(), crc_offset));
  if (stored != actual) throw CorruptFile("grid checksum mismatch", crc_offset);
  return d;
}

void save_grid(const coverage::CoverageGrid& grid, const std::filesystem::path& path,
               std::uint64_t scenario_version) {
  write_bytes(path, encode_grid(grid, scenario_version));
}

coverage::CoverageGrid load_grid(const std::filesystem::path& path) {
  return decode_grid(read_bytes(path)).grid;
}

std::string grid_to_csv(const coverage::CoverageGrid& grid) {
  std::string out = "col,row,x_m,y_m,visible_mask,mono_count,stereo_pairs\n";
  char buf[160];
  for (int row = 0; row < grid.spec.rows; ++row) {
    for (int col = 0; col < grid.spec.cols; ++col) {
      const auto& c = grid.at(col, row);
      const Vec2 p = grid.spec.cell_center(col, row);
      std::snprintf(buf, sizeof(buf), "%d,%d,%.6f,%.6f,%llu,%u,%u\n", col, row, p.x(), p.y(),
                    static_cast<unsigned long long>(c.visible_mask), static_cast<unsigned>(c.mono_count),
                    static_cast<unsigned>(c.stereo_pairs));
      out += buf;
    }
  }
  return out;
}

}  // namespace junction::io
