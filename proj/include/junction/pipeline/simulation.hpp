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
#include <optional>
#include <vector>

#include "junction/pipeline/encoder.hpp"
#include "junction/scene/scenario.hpp"
#include "junction/sync/association.hpp"
#include "junction/sync/trigger_clock.hpp"

namespace junction::pipeline {

inline constexpr int kMaxStreamsPerWorker = 2;

/// What a source does when its channel is full. Sources never block.
enum class DropPolicy { kDropNewest, kDropOldest };

struct PipelineConfig {
  int workers = 3;
  /// Encode throughput of every worker, frames per second.
  double worker_throughput_fps = 60.0;
  /// Optional per-worker throughput; overrides worker_throughput_fps.
  std::vector<double> worker_throughput_override;
  /// Worker index -> camera ids. Empty assigns the i-th camera (in id order)
  /// to worker i / 2.
  std::vector<std::vector<int>> assignment;
  /// Source channel capacity in frames.
  int channel_capacity = 50;
  /// Encoder-to-writer channel capacity in chunks; full means backpressure.
  int writer_queue_chunks = 8;
  int chunk_frames = 25;
  DropPolicy drop_policy = DropPolicy::kDropNewest;
  int bits_per_pixel = 8;
  RatioModel ratio;
  /// Disk bandwidth of the writer in bit/s; 0 writes instantly.
  double writer_bandwidth_bps = 0.0;
  /// Recording length; the scenario duration when absent.
  std::optional<double> duration_s;
  /// Stops the run at this simulated time without draining.
  std::optional<double> abort_at_s;
  std::int64_t start_utc_ns = 0;
  sync::LatencyModel latency;
  std::int64_t jitter_sd_ns = 0;
  /// 1 runs every phase on the calling thread; more runs source and worker
  /// phases on a pool; 0 uses the hardware concurrency. Results are identical.
  int threads = 1;
  /// When positive, virtual time is paced against the wall clock at this
  /// many wall seconds per simulated second.
  double wall_clock_scale = 0.0;
  std::uint64_t seed = 0;
};

struct CameraStats {
  int camera_id = 0;
  std::int64_t produced = 0;
  std::int64_t dropped = 0;
  std::int64_t encoded = 0;
  std::int64_t written = 0;
  std::uint64_t raw_bytes_produced = 0;
  std::uint64_t encoded_bytes_written = 0;
  int queue_high_water = 0;
  double raw_bitrate_bps = 0.0;
  double encoded_bitrate_bps = 0.0;

  bool operator==(const CameraStats&) const = default;
};

struct ThroughputStats {
  std::vector<CameraStats> cameras;
  std::int64_t produced = 0;
  std::int64_t dropped = 0;
  std::int64_t encoded = 0;
  std::int64_t written = 0;
  /// Frames waiting in source channels at shutdown.
  std::int64_t in_source_queues = 0;
  /// Frames inside an encoder at shutdown.
  std::int64_t in_encoding = 0;
  /// Encoded frames not yet on disk at shutdown.
  std::int64_t in_writer = 0;
  int writer_queue_high_water = 0;
  double aggregate_raw_bitrate_bps = 0.0;
  double aggregate_encoded_bitrate_bps = 0.0;
  std::int64_t simulated_end_ns = 0;
  bool aborted = false;
  double wall_time_s = 0.0;

  std::int64_t in_flight() const { return in_source_queues + in_encoding + in_writer; }
  /// Compares everything except wall_time_s.
  bool operator==(const ThroughputStats& o) const;
};

struct Recording {
  sync::TriggerClock clock;
  std::vector<int> camera_ids;
  /// In write order.
  std::vector<EncodedChunk> chunks;
  /// Written frames, sorted by (camera_id, seq).
  std::vector<sync::FrameStamp> stamps;
  /// Seed of the deterministic pseudo-random chunk payloads.
  std::uint64_t payload_seed = 0;

  bool operator==(const Recording&) const = default;
};

struct PipelineResult {
  ThroughputStats stats;
  Recording recording;
};

/// Worker index -> camera ids after defaulting. Throws ConfigurationError
/// when a worker carries more than two streams, a camera is unassigned or
/// assigned twice, or an unknown camera is named.
std::vector<std::vector<int>> resolve_assignment(const scene::Scenario& s, const PipelineConfig& config);

/// Discrete-event simulation of sources, encoder workers and the writer in
/// virtual time. Throws InvalidArgument for an invalid scenario and
/// ConfigurationError for an invalid configuration.
PipelineResult run_pipeline(const scene::Scenario& s, const PipelineConfig& config);

}  // namespace junction::pipeline
