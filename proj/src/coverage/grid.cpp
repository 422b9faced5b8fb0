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

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <string>
#include <thread>

#include "junction/common/error.hpp"
#include "junction/coverage/coverage.hpp"

namespace junction::coverage {

std::optional<std::size_t> GridSpec::locate(const Vec2& p) const {
  const double fx = (p.x() - origin_m.x()) / cell_m;
  const double fy = (p.y() - origin_m.y()) / cell_m;
  if (!(fx >= 0.0 && fy >= 0.0)) return std::nullopt;
  const auto col = static_cast<long long>(std::floor(fx));
  const auto row = static_cast<long long>(std::floor(fy));
  if (col >= cols || row >= rows) return std::nullopt;
  return static_cast<std::size_t>(row) * cols + static_cast<std::size_t>(col);
}

GridSpec grid_for_region(const Box2& region, double cell_m) {
  if (!(cell_m > 0.0)) throw InvalidArgument("cell size must be positive");
  GridSpec spec;
  spec.cell_m = cell_m;
  spec.origin_m = Vec2(std::floor(region.min.x() / cell_m) * cell_m,
                       std::floor(region.min.y() / cell_m) * cell_m);
  spec.cols = std::max(1, static_cast<int>(std::ceil((region.max.x() - spec.origin_m.x()) / cell_m)));
  spec.rows = std::max(1, static_cast<int>(std::ceil((region.max.y() - spec.origin_m.y()) / cell_m)));
  return spec;
}

GridSpec default_grid_spec(const scene::Scenario& s, double cell_m) {
  Box2 region = scenario_bounds(s);
  region.min -= Vec2(5.0, 5.0);
  region.max += Vec2(5.0, 5.0);
  return grid_for_region(region, cell_m);
}

std::vector<std::uint8_t> visibility_map(const geometry::CameraModel& cam,
                                         std::span<const Prism> prisms, const GridSpec& spec) {
  std::vector<std::uint8_t> map(spec.cell_count(), 0);
  const CameraViewTester tester(cam);
  for (int row = 0; row < spec.rows; ++row) {
    for (int col = 0; col < spec.cols; ++col) {
      const Vec2 c = spec.cell_center(col, row);
      map[static_cast<std::size_t>(row) * spec.cols + col] =
          tester.visible(Vec3(c.x(), c.y(), kReferenceHeightM), prisms) ? 1 : 0;
    }
  }
  return map;
}

void finalize_cells(CoverageGrid& grid, std::span<const StereoPairSpec> pairs) {
  std::vector<std::uint64_t> pair_masks;
  pair_masks.reserve(pairs.size());
  for (const auto& p : pairs) pair_masks.push_back(camera_bit(p.cam_a) | camera_bit(p.cam_b));
  for (auto& cell : grid.cells) {
    cell.mono_count = static_cast<std::uint8_t>(std::popcount(cell.visible_mask));
    std::uint16_t stereo = 0;
    for (auto m : pair_masks) {
      if ((cell.visible_mask & m) == m) ++stereo;
    }
    cell.stereo_pairs = stereo;
  }
}

CoverageGrid compute_coverage(const scene::Scenario& s, const GridSpec& spec,
                              const CoverageOptions& options) {
  if (spec.cols <= 0 || spec.rows <= 0 || !(spec.cell_m > 0.0)) {
    throw InvalidArgument("grid spec must have positive size and cell edge");
  }
  if (spec.cell_count() > options.max_cells) {
    throw ResourceLimit("grid of " + std::to_string(spec.cell_count()) +
                        " cells exceeds budget of " + std::to_string(options.max_cells));
  }
  for (const auto& cam : s.cameras) {
    if (cam.id < 1 || cam.id > 64) throw InvalidArgument("camera ids must lie in 1..64");
  }
  const std::vector<StereoPairSpec> pairs =
      options.pairs ? *options.pairs : enumerate_stereo_pairs(s, options.constraints);

  const auto prisms = make_prisms(s.occluders);
  std::vector<CameraViewTester> testers;
  testers.reserve(s.cameras.size());
  for (const auto& cam : s.cameras) testers.emplace_back(cam);

  CoverageGrid grid;
  grid.spec = spec;
  grid.cells.assign(spec.cell_count(), CellRecord{});

  int threads = options.threads > 0 ? options.threads
                                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, spec.rows);

  std::atomic<int> next_row{0};
  std::atomic<int> rows_done{0};
  std::atomic<bool> cancelled{false};
  std::mutex progress_mutex;

  // Each row is written by exactly one worker.
  const auto worker = [&]() {
    for (;;) {
      if (cancelled.load(std::memory_order_relaxed)) return;
      const int row = next_row.fetch_add(1);
      if (row >= spec.rows) return;
      for (int col = 0; col < spec.cols; ++col) {
        const Vec2 c = spec.cell_center(col, row);
        const Vec3 target(c.x(), c.y(), kReferenceHeightM);
        std::uint64_t mask = 0;
        for (const auto& t : testers) {
          if (t.visible(target, prisms)) mask |= camera_bit(t.camera().id);
        }
        grid.cells[static_cast<std::size_t>(row) * spec.cols + col].visible_mask = mask;
      }
      const int done = rows_done.fetch_add(1) + 1;
      if (options.progress) {
        std::lock_guard<std::mutex> lock(progress_mutex);
        if (!options.progress(done, spec.rows)) cancelled = true;
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (cancelled) throw Cancelled();

  finalize_cells(grid, pairs);
  return grid;
}

}  // namespace junction::coverage
