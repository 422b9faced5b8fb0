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

#include "junction/sync/association.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "junction/common/digest.hpp"
#include "junction/common/error.hpp"

namespace junction::sync {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

std::int64_t LatencyModel::latency(int camera_id) const {
  const auto it = per_camera_ns.find(camera_id);
  return it == per_camera_ns.end() ? default_ns : it->second;
}

std::int64_t nearest_trigger(const TriggerClock& clock, std::int64_t arrival_ns,
                             std::int64_t latency_ns) {
  if (clock.period_ns <= 0) throw InvalidArgument("trigger period must be positive");
  const std::int64_t x = arrival_ns - latency_ns - clock.start_utc_ns;
  const std::int64_t k = floor_div(x, clock.period_ns);
  const std::int64_t r = x - k * clock.period_ns;
  return 2 * r <= clock.period_ns ? k : k + 1;
}

std::vector<FrameStamp> associate(std::span<const RawFrame> frames, const TriggerClock& clock,
                                  const LatencyModel& latency) {
  std::map<int, std::vector<const RawFrame*>> by_camera;
  for (const auto& f : frames) by_camera[f.camera_id].push_back(&f);

  std::vector<FrameStamp> out;
  out.reserve(frames.size());
  for (const auto& [id, list] : by_camera) {
    const std::int64_t lat = latency.latency(id);
    const FrameStamp* prev = nullptr;
    for (const RawFrame* f : list) {
      if (prev && f->arrival_ns < prev->arrival_ns) {
        throw InvalidArgument("frames of camera " + std::to_string(id) + " are not sorted by arrival");
      }
      const std::int64_t k = nearest_trigger(clock, f->arrival_ns, lat);
      if (k < 0) {
        throw InvalidArgument("frame of camera " + std::to_string(id) + " arriving at " +
                              std::to_string(f->arrival_ns) + " ns precedes the clock start");
      }
      if (prev && k == prev->seq) {
        throw AmbiguousAssociation("camera " + std::to_string(id) + ": frames arriving at " +
                                   std::to_string(prev->arrival_ns) + " ns and " +
                                   std::to_string(f->arrival_ns) + " ns both map to trigger " +
                                   std::to_string(trigger_time(clock, k)) + " ns");
      }
      out.push_back({id, k, trigger_time(clock, k), f->arrival_ns});
      prev = &out.back();
    }
  }
  return out;
}

std::vector<DropReport> detect_drops(std::span<const FrameStamp> frames, const TriggerClock& clock) {
  return detect_drops(frames, clock, {}, -1);
}

std::vector<DropReport> detect_drops(std::span<const FrameStamp> frames, const TriggerClock& clock,
                                     std::span<const int> camera_ids, std::int64_t expected_frames) {
  std::map<int, std::vector<std::int64_t>> seqs;
  for (int id : camera_ids) seqs[id];
  for (const auto& f : frames) seqs[f.camera_id].push_back(f.seq);

  std::vector<DropReport> out;
  for (auto& [id, s] : seqs) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    const bool bounded =
        expected_frames >= 0 && std::find(camera_ids.begin(), camera_ids.end(), id) != camera_ids.end();
    DropReport r{id, {}};
    std::int64_t next = bounded ? 0 : (s.empty() ? 0 : s.front());
    for (std::int64_t q : s) {
      for (std::int64_t m = next; m < q; ++m) r.missing_trigger_ns.push_back(trigger_time(clock, m));
      next = std::max(next, q + 1);
    }
    if (bounded) {
      for (std::int64_t m = next; m < expected_frames; ++m) {
        r.missing_trigger_ns.push_back(trigger_time(clock, m));
      }
    }
    if (!r.missing_trigger_ns.empty()) out.push_back(std::move(r));
  }
  return out;
}

ArrivalSimulation simulate_arrivals(std::span<const int> camera_ids, const TriggerClock& clock,
                                    std::int64_t frames_per_camera, const LatencyModel& latency,
                                    std::uint64_t seed) {
  if (clock.period_ns <= 0 || clock.jitter_sd_ns < 0) throw InvalidArgument("invalid trigger clock");
  if (frames_per_camera < 0) throw InvalidArgument("frame count must be non-negative");
  ArrivalSimulation sim;
  for (int id : camera_ids) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(id)));
    std::normal_distribution<double> normal(0.0, 1.0);
    const double sd = static_cast<double>(clock.jitter_sd_ns);
    const std::int64_t lat = latency.latency(id);
    for (std::int64_t k = 0; k < frames_per_camera; ++k) {
      double z = 0.0;
      if (sd > 0.0) {
        do {
          z = normal(rng);
        } while (std::abs(z) > 3.0);
      }
      const std::int64_t trig = trigger_time(clock, k);
      const std::int64_t arrival = std::max<std::int64_t>(trig, trig + lat + std::llround(z * sd));
      sim.frames.push_back({id, arrival});
      sim.truth.push_back({id, k, trig, arrival});
    }
  }
  return sim;
}

}  // namespace junction::sync
