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
#include <span>

#include "junction/scene/scenario.hpp"
#include "junction/sync/association.hpp"

namespace junction::pipeline {

struct FrameMessage {
  sync::FrameStamp stamp;
  std::uint64_t payload_bytes = 0;
  /// Fraction of the image covered by moving actors, in [0, 1].
  double activity = 0.0;

  bool operator==(const FrameMessage&) const = default;
};

/// Compression ratio falling linearly from r_max (idle scene) to r_min
/// (image fully covered by moving actors).
struct RatioModel {
  double r_min = 8.0;
  double r_max = 10.0;

  double ratio(double mean_activity) const { return r_max - (r_max - r_min) * mean_activity; }
  bool operator==(const RatioModel&) const = default;
};

struct EncodedChunk {
  int camera_id = 0;
  std::uint64_t first_seq = 0;
  std::uint32_t frame_count = 0;
  std::uint64_t raw_bytes = 0;
  std::uint64_t encoded_bytes = 0;

  double ratio() const {
    return encoded_bytes == 0 ? 0.0 : static_cast<double>(raw_bytes) / static_cast<double>(encoded_bytes);
  }
  bool operator==(const EncodedChunk&) const = default;
};

/// encoded_bytes = round(raw_bytes / r) with r from the mean activity. Throws
/// InvalidArgument for an empty group, mixed cameras, a sequence gap, activity
/// outside [0, 1] or a model with r_min < 1 or r_min > r_max.
EncodedChunk encode_chunk(std::span<const FrameMessage> frames, const RatioModel& model);

/// Simulated encode service time of a group, frame_count / throughput, in ns.
std::int64_t encode_service_ns(std::uint32_t frame_count, double worker_throughput_fps);

/// Image fraction covered by the projected bounding boxes of moving actors
/// (speed > 0) at time t, clipped to the image and capped at 1. Actors with
/// any corner behind the camera are skipped.
double frame_activity(const scene::Scenario& s, const geometry::CameraModel& cam, double t_s);

}  // namespace junction::pipeline
