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
#include <map>
#include <span>
#include <vector>

#include "junction/sync/trigger_clock.hpp"

namespace junction::sync {

/// A frame as received, before it is tied to a trigger.
struct RawFrame {
  int camera_id = 0;
  std::int64_t arrival_ns = 0;

  bool operator==(const RawFrame&) const = default;
};

/// seq is the trigger index, so trigger_utc_ns = start + seq * period.
struct FrameStamp {
  int camera_id = 0;
  std::int64_t seq = 0;
  std::int64_t trigger_utc_ns = 0;
  std::int64_t arrival_ns = 0;

  bool operator==(const FrameStamp&) const = default;
};

/// Constant transport latency per camera.
struct LatencyModel {
  std::int64_t default_ns = 0;
  std::map<int, std::int64_t> per_camera_ns;

  std::int64_t latency(int camera_id) const;
};

/// Trigger index nearest to (arrival - latency); an exact tie goes to the
/// earlier trigger.
std::int64_t nearest_trigger(const TriggerClock& clock, std::int64_t arrival_ns,
                             std::int64_t latency_ns);

/// Ties each frame to its nearest trigger. Frames must be sorted by arrival
/// within each camera. The result is sorted by (camera_id, seq). Throws
/// AmbiguousAssociation naming both frames when two frames of one camera map
/// to the same trigger, and InvalidArgument for unsorted input or a frame
/// that maps before the clock start.
std::vector<FrameStamp> associate(std::span<const RawFrame> frames, const TriggerClock& clock,
                                  const LatencyModel& latency = {});

struct DropReport {
  int camera_id = 0;
  std::vector<std::int64_t> missing_trigger_ns;

  bool operator==(const DropReport&) const = default;
};

/// Gaps between consecutive sequence numbers of each camera. Cameras with
/// complete streams are omitted.
std::vector<DropReport> detect_drops(std::span<const FrameStamp> frames, const TriggerClock& clock);

/// Same, also reporting missing sequence numbers outside the observed range
/// for an expected stream of seq 0 .. expected_frames - 1 on each listed camera.
std::vector<DropReport> detect_drops(std::span<const FrameStamp> frames, const TriggerClock& clock,
                                     std::span<const int> camera_ids, std::int64_t expected_frames);

/// Arrival simulation: arrival = trigger + latency + jitter, with jitter drawn
/// from a normal distribution truncated at three standard deviations and the
/// arrival clamped to be no earlier than the trigger.
struct ArrivalSimulation {
  std::vector<RawFrame> frames;
  /// Ground-truth association, same order as frames.
  std::vector<FrameStamp> truth;
};

ArrivalSimulation simulate_arrivals(std::span<const int> camera_ids, const TriggerClock& clock,
                                    std::int64_t frames_per_camera, const LatencyModel& latency,
                                    std::uint64_t seed);

}  // namespace junction::sync
