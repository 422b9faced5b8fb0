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

#include "junction/pipeline/bitrate.hpp"

#include <cmath>

#include "junction/common/error.hpp"

namespace junction::pipeline {

namespace {

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidArgument(std::string(what) + " must be positive");
}

}  // namespace

double per_camera_bitrate(const geometry::CameraIntrinsics& intr, int bits_per_pixel, double fps) {
  require_positive(intr.width_px, "image width");
  require_positive(intr.height_px, "image height");
  require_positive(bits_per_pixel, "bits per pixel");
  require_positive(fps, "frame rate");
  return static_cast<double>(intr.width_px) * intr.height_px * bits_per_pixel * fps;
}

double aggregate_bitrate(std::span<const geometry::CameraModel> cameras, int bits_per_pixel,
                         double fps) {
  double total = 0.0;
  for (const auto& c : cameras) total += per_camera_bitrate(c.intrinsics, bits_per_pixel, fps);
  return total;
}

std::uint64_t frame_bytes(const geometry::CameraIntrinsics& intr, int bits_per_pixel) {
  require_positive(intr.width_px, "image width");
  require_positive(intr.height_px, "image height");
  require_positive(bits_per_pixel, "bits per pixel");
  const std::uint64_t bits = static_cast<std::uint64_t>(intr.width_px) *
                             static_cast<std::uint64_t>(intr.height_px) *
                             static_cast<std::uint64_t>(bits_per_pixel);
  return (bits + 7) / 8;
}

double storage_duration(double capacity_tb, double aggregate_bitrate_bps, double ratio) {
  require_positive(capacity_tb, "capacity");
  require_positive(aggregate_bitrate_bps, "bit rate");
  require_positive(ratio, "compression ratio");
  return capacity_tb * 1e12 * 8.0 / (aggregate_bitrate_bps / ratio);
}

}  // namespace junction::pipeline
