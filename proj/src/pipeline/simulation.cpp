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

#include "junction/pipeline/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "junction/common/digest.hpp"
#include "junction/common/error.hpp"
#include "junction/pipeline/bitrate.hpp"

namespace junction::pipeline {

bool ThroughputStats::operator==(const ThroughputStats& o) const {
  return cameras == o.cameras && produced == o.produced && dropped == o.dropped &&
         encoded == o.encoded && written == o.written && in_source_queues == o.in_source_queues &&
         in_encoding == o.in_encoding && in_writer == o.in_writer &&
         writer_queue_high_water == o.writer_queue_high_water &&
         aggregate_raw_bitrate_bps == o.aggregate_raw_bitrate_bps &&
         aggregate_encoded_bitrate_bps == o.aggregate_encoded_bitrate_bps &&
         simulated_end_ns == o.simulated_end_ns && aborted == o.aborted;
}

namespace {

constexpr std::int64_t kNever = std::numeric_limits<std::int64_t>::max();

/// Runs index-parallel phases either inline or on a fixed pool. Each call
/// returns only after every index has been processed.
class PhaseRunner {
 public:
  explicit PhaseRunner(int threads) {
    for (int i = 1; i < threads; ++i) pool_.emplace_back([this] { loop(); });
  }

  ~PhaseRunner() {
    {
      std::lock_guard lock(mu_);
      stop_ = true;
    }
    wake_.notify_all();
    for (auto& t : pool_) t.join();
  }

  void run(std::size_t n, const std::function<void(std::size_t)>& fn) {
    if (pool_.empty() || n <= 1) {
      for (std::size_t i = 0; i < n; ++i) fn(i);
      return;
    }
    {
      std::lock_guard lock(mu_);
      fn_ = &fn;
      n_ = n;
      next_.store(0);
      pending_ = n;
      ++generation_;
    }
    wake_.notify_all();
    work();
    std::unique_lock lock(mu_);
    done_.wait(lock, [this] { return pending_ == 0; });
    fn_ = nullptr;
  }

 private:
  void work() {
    for (;;) {
      const std::size_t i = next_.fetch_add(1);
      if (i >= n_) return;
      (*fn_)(i);
      std::lock_guard lock(mu_);
      if (--pending_ == 0) done_.notify_all();
    }
  }

  void loop() {
    std::uint64_t seen = 0;
    for (;;) {
      {
        std::unique_lock lock(mu_);
        wake_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
      }
      work();
    }
  }

  std::vector<std::thread> pool_;
  std::mutex mu_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(std::size_t)>* fn_ = nullptr;
  std::size_t n_ = 0;
  std::atomic<std::size_t> next_{0};
  std::size_t pending_ = 0;
  std::uint64_t generation_ = 0;
  bool stop_ = false;
};

struct InFlightChunk {
  EncodedChunk chunk;
  std::vector<sync::FrameStamp> stamps;
};

struct Stream {
  const geometry::CameraModel* camera = nullptr;
  std::uint64_t frame_bytes = 0;
  std::deque<FrameMessage> queue;
  bool finished = false;
  CameraStats stats;
};

struct Worker {
  std::vector<std::size_t> streams;
  double throughput_fps = 0.0;
  bool busy = false;
  bool blocked = false;
  std::int64_t done_ns = kNever;
  InFlightChunk job;
};

struct Writer {
  std::deque<InFlightChunk> queue;
  bool busy = false;
  std::int64_t done_ns = kNever;
  InFlightChunk job;
};

void validate_config(const PipelineConfig& c) {
  if (c.workers < 1) throw ConfigurationError("at least one encoder worker is required");
  if (!c.worker_throughput_override.empty() &&
      static_cast<int>(c.worker_throughput_override.size()) != c.workers) {
    throw ConfigurationError("per-worker throughput list must name every worker");
  }
  for (double f : c.worker_throughput_override) {
    if (!(f > 0.0)) throw ConfigurationError("worker throughput must be positive");
  }
  if (c.worker_throughput_override.empty() && !(c.worker_throughput_fps > 0.0)) {
    throw ConfigurationError("worker throughput must be positive");
  }
  if (c.channel_capacity < 1) throw ConfigurationError("channel capacity must be at least 1 frame");
  if (c.writer_queue_chunks < 1) throw ConfigurationError("writer queue must hold at least 1 chunk");
  if (c.chunk_frames < 1) throw ConfigurationError("chunk size must be at least 1 frame");
  if (c.bits_per_pixel < 1) throw ConfigurationError("bits per pixel must be positive");
  if (!(c.writer_bandwidth_bps >= 0.0)) throw ConfigurationError("writer bandwidth must be non-negative");
  if (!(c.ratio.r_min >= 1.0) || !(c.ratio.r_max >= c.ratio.r_min)) {
    throw ConfigurationError("ratio model needs 1 <= r_min <= r_max");
  }
  if (c.threads < 0) throw ConfigurationError("thread count must be non-negative");
  if (c.jitter_sd_ns < 0) throw ConfigurationError("jitter must be non-negative");
  if (c.duration_s && !(*c.duration_s > 0.0)) throw ConfigurationError("duration must be positive");
  if (c.abort_at_s && !(*c.abort_at_s >= 0.0)) throw ConfigurationError("abort time must be non-negative");
}

/// A stream is ready when a full chunk is queued, when the head run of
/// contiguous frames is cut by a gap, or when its source has finished.
std::size_t ready_run(const Stream& st, int chunk_frames) {
  if (st.queue.empty()) return 0;
  const std::size_t limit = std::min<std::size_t>(st.queue.size(), chunk_frames);
  const std::int64_t first = st.queue.front().stamp.seq;
  std::size_t run = 1;
  while (run < limit && st.queue[run].stamp.seq == first + static_cast<std::int64_t>(run)) ++run;
  const bool full = run == static_cast<std::size_t>(chunk_frames);
  const bool gap = run < st.queue.size();
  return (full || gap || st.finished) ? run : 0;
}

std::int64_t write_service_ns(const EncodedChunk& c, double bandwidth_bps) {
  if (bandwidth_bps <= 0.0) return 0;
  return std::llround(static_cast<double>(c.encoded_bytes) * 8.0 * 1e9 / bandwidth_bps);
}

}  // namespace

std::vector<std::vector<int>> resolve_assignment(const scene::Scenario& s, const PipelineConfig& config) {
  std::vector<int> ids;
  for (const auto& c : s.cameras) ids.push_back(c.id);
  std::sort(ids.begin(), ids.end());
  if (config.workers < 1) throw ConfigurationError("at least one encoder worker is required");

  std::vector<std::vector<int>> out;
  if (config.assignment.empty()) {
    out.resize(static_cast<std::size_t>(config.workers));
    for (std::size_t i = 0; i < ids.size(); ++i) {
      const std::size_t w = i / kMaxStreamsPerWorker;
      if (w >= out.size()) {
        throw ConfigurationError(std::to_string(ids.size()) + " streams need at least " +
                                 std::to_string((ids.size() + 1) / 2) + " workers at " +
                                 std::to_string(kMaxStreamsPerWorker) + " streams each, got " +
                                 std::to_string(config.workers));
      }
      out[w].push_back(ids[i]);
    }
    return out;
  }

  if (static_cast<int>(config.assignment.size()) != config.workers) {
    throw ConfigurationError("assignment must list every worker");
  }
  std::set<int> seen;
  for (std::size_t w = 0; w < config.assignment.size(); ++w) {
    const auto& streams = config.assignment[w];
    if (streams.size() > static_cast<std::size_t>(kMaxStreamsPerWorker)) {
      throw ConfigurationError("worker " + std::to_string(w) + " carries " +
                               std::to_string(streams.size()) + " streams; the limit is " +
                               std::to_string(kMaxStreamsPerWorker));
    }
    for (int id : streams) {
      if (!std::binary_search(ids.begin(), ids.end(), id)) {
        throw ConfigurationError("assignment names unknown camera " + std::to_string(id));
      }
      if (!seen.insert(id).second) {
        throw ConfigurationError("camera " + std::to_string(id) + " is assigned twice");
      }
    }
  }
  if (seen.size() != ids.size()) throw ConfigurationError("every camera stream must be assigned");
  return config.assignment;
}

PipelineResult run_pipeline(const scene::Scenario& s, const PipelineConfig& config) {
  const auto wall_start = std::chrono::steady_clock::now();
  if (const auto v = scene::validate_scenario(s); !v.empty()) {
    throw InvalidArgument("invalid scenario: " + v.front().entity + ": " + v.front().rule);
  }
  validate_config(config);
  const auto assignment = resolve_assignment(s, config);

  sync::TriggerClock clock = sync::clock_for_rate(s.frame_rate_hz, config.start_utc_ns);
  clock.jitter_sd_ns = config.jitter_sd_ns;
  const std::int64_t n_triggers = sync::trigger_count(clock, config.duration_s.value_or(s.duration_s));
  const std::int64_t abort_ns =
      config.abort_at_s ? sync::seconds_to_ns(*config.abort_at_s) : kNever;

  // Streams in camera-id order.
  std::vector<const geometry::CameraModel*> cams;
  for (const auto& c : s.cameras) cams.push_back(&c);
  std::sort(cams.begin(), cams.end(), [](auto* a, auto* b) { return a->id < b->id; });
  std::vector<Stream> streams(cams.size());
  std::map<int, std::size_t> stream_of;
  std::vector<int> camera_ids;
  for (std::size_t i = 0; i < cams.size(); ++i) {
    streams[i].camera = cams[i];
    streams[i].frame_bytes = frame_bytes(cams[i]->intrinsics, config.bits_per_pixel);
    streams[i].stats.camera_id = cams[i]->id;
    stream_of[cams[i]->id] = i;
    camera_ids.push_back(cams[i]->id);
  }

  std::vector<Worker> workers(assignment.size());
  for (std::size_t w = 0; w < workers.size(); ++w) {
    for (int id : assignment[w]) workers[w].streams.push_back(stream_of.at(id));
    workers[w].throughput_fps = config.worker_throughput_override.empty()
                                    ? config.worker_throughput_fps
                                    : config.worker_throughput_override[w];
  }
  Writer writer;

  const std::uint64_t run_seed = derive_seed(s.seed, config.seed);
  const auto arrivals = sync::simulate_arrivals(camera_ids, clock, n_triggers, config.latency, run_seed);

  PipelineResult result;
  Recording& rec = result.recording;
  rec.clock = clock;
  rec.camera_ids = camera_ids;
  rec.payload_seed = derive_seed(run_seed, 0x70a1);
  int writer_high_water = 0;

  const int threads = config.threads == 0
                          ? static_cast<int>(std::max(1u, std::thread::hardware_concurrency()))
                          : config.threads;
  PhaseRunner runner(threads);

  std::int64_t next_emit = 0;
  std::int64_t now = clock.start_utc_ns;
  bool aborted = false;

  auto try_push = [&](Worker& w) {
    if (static_cast<int>(writer.queue.size()) >= config.writer_queue_chunks) {
      w.blocked = true;
      return false;
    }
    writer.queue.push_back(std::move(w.job));
    writer_high_water = std::max(writer_high_water, static_cast<int>(writer.queue.size()));
    w.blocked = false;
    w.job = {};
    return true;
  };

  auto finish_write = [&](InFlightChunk& job) {
    auto& st = streams[stream_of.at(job.chunk.camera_id)];
    st.stats.written += job.chunk.frame_count;
    st.stats.encoded_bytes_written += job.chunk.encoded_bytes;
    rec.chunks.push_back(job.chunk);
    rec.stamps.insert(rec.stamps.end(), job.stamps.begin(), job.stamps.end());
  };

  for (;;) {
    std::int64_t t = kNever;
    if (next_emit < n_triggers) t = std::min(t, sync::trigger_time(clock, next_emit));
    for (const auto& w : workers) {
      if (w.busy) t = std::min(t, w.done_ns);
    }
    if (writer.busy) t = std::min(t, writer.done_ns);
    if (t == kNever) break;
    if (t - clock.start_utc_ns > abort_ns) {
      aborted = true;
      break;
    }
    now = t;
    if (config.wall_clock_scale > 0.0) {
      const auto offset = std::chrono::duration<double>(
          static_cast<double>(t - clock.start_utc_ns) * 1e-9 * config.wall_clock_scale);
      std::this_thread::sleep_until(wall_start + std::chrono::duration_cast<std::chrono::nanoseconds>(offset));
    }

    // Writer completion.
    if (writer.busy && writer.done_ns == t) {
      finish_write(writer.job);
      writer.busy = false;
      writer.done_ns = kNever;
    }

    // Encoder completions and writer starts, repeated while pushes unblock.
    for (bool progress = true; progress;) {
      progress = false;
      for (auto& w : workers) {
        if (w.busy && w.done_ns == t) {
          w.busy = false;
          w.done_ns = kNever;
          streams[stream_of.at(w.job.chunk.camera_id)].stats.encoded += w.job.chunk.frame_count;
          w.blocked = true;
        }
        if (w.blocked && try_push(w)) progress = true;
      }
      while (!writer.busy && !writer.queue.empty()) {
        writer.job = std::move(writer.queue.front());
        writer.queue.pop_front();
        progress = true;
        const std::int64_t service = write_service_ns(writer.job.chunk, config.writer_bandwidth_bps);
        if (service == 0) {
          finish_write(writer.job);
        } else {
          writer.busy = true;
          writer.done_ns = t + service;
        }
      }
    }

    // Source emissions.
    if (next_emit < n_triggers && sync::trigger_time(clock, next_emit) == t) {
      const std::int64_t k = next_emit++;
      const bool last = next_emit == n_triggers;
      const double t_s = static_cast<double>(k) / s.frame_rate_hz;
      runner.run(streams.size(), [&](std::size_t i) {
        Stream& st = streams[i];
        FrameMessage m;
        m.stamp = arrivals.truth[i * static_cast<std::size_t>(n_triggers) + static_cast<std::size_t>(k)];
        m.payload_bytes = st.frame_bytes;
        m.activity = frame_activity(s, *st.camera, t_s);
        ++st.stats.produced;
        st.stats.raw_bytes_produced += m.payload_bytes;
        if (static_cast<int>(st.queue.size()) >= config.channel_capacity) {
          ++st.stats.dropped;
          if (config.drop_policy == DropPolicy::kDropOldest) {
            st.queue.pop_front();
            st.queue.push_back(m);
          }
        } else {
          st.queue.push_back(m);
        }
        st.stats.queue_high_water = std::max(st.stats.queue_high_water, static_cast<int>(st.queue.size()));
        if (last) st.finished = true;
      });
    }

    // Idle workers pick the ready stream with the oldest head frame.
    runner.run(workers.size(), [&](std::size_t wi) {
      Worker& w = workers[wi];
      if (w.busy || w.blocked) return;
      std::size_t best = streams.size();
      std::size_t best_run = 0;
      for (std::size_t si : w.streams) {
        const std::size_t run = ready_run(streams[si], config.chunk_frames);
        if (run == 0) continue;
        if (best == streams.size() ||
            streams[si].queue.front().stamp.seq < streams[best].queue.front().stamp.seq ||
            (streams[si].queue.front().stamp.seq == streams[best].queue.front().stamp.seq &&
             streams[si].camera->id < streams[best].camera->id)) {
          best = si;
          best_run = run;
        }
      }
      if (best == streams.size()) return;
      Stream& st = streams[best];
      std::vector<FrameMessage> frames(st.queue.begin(), st.queue.begin() + static_cast<std::ptrdiff_t>(best_run));
      st.queue.erase(st.queue.begin(), st.queue.begin() + static_cast<std::ptrdiff_t>(best_run));
      w.job.chunk = encode_chunk(frames, config.ratio);
      w.job.stamps.clear();
      for (const auto& f : frames) w.job.stamps.push_back(f.stamp);
      w.busy = true;
      w.done_ns = t + encode_service_ns(w.job.chunk.frame_count, w.throughput_fps);
    });
  }

  ThroughputStats& stats = result.stats;
  stats.aborted = aborted;
  stats.simulated_end_ns = now - clock.start_utc_ns;
  stats.writer_queue_high_water = writer_high_water;
  for (const auto& w : workers) {
    if (w.busy || w.blocked) {
      if (w.busy) stats.in_encoding += w.job.chunk.frame_count;
      else stats.in_writer += w.job.chunk.frame_count;
    }
  }
  for (const auto& c : writer.queue) stats.in_writer += c.chunk.frame_count;
  if (writer.busy) stats.in_writer += writer.job.chunk.frame_count;

  const double period_s = static_cast<double>(clock.period_ns) * 1e-9;
  for (auto& st : streams) {
    auto& cs = st.stats;
    stats.in_source_queues += static_cast<std::int64_t>(st.queue.size());
    if (cs.produced > 0) {
      const double span_s = static_cast<double>(cs.produced) * period_s;
      cs.raw_bitrate_bps = static_cast<double>(cs.raw_bytes_produced) * 8.0 / span_s;
      cs.encoded_bitrate_bps = static_cast<double>(cs.encoded_bytes_written) * 8.0 / span_s;
    }
    stats.produced += cs.produced;
    stats.dropped += cs.dropped;
    stats.encoded += cs.encoded;
    stats.written += cs.written;
    stats.aggregate_raw_bitrate_bps += cs.raw_bitrate_bps;
    stats.aggregate_encoded_bitrate_bps += cs.encoded_bitrate_bps;
    stats.cameras.push_back(cs);
  }

  std::sort(rec.stamps.begin(), rec.stamps.end(), [](const auto& a, const auto& b) {
    return a.camera_id != b.camera_id ? a.camera_id < b.camera_id : a.seq < b.seq;
  });
  stats.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - wall_start).count();
  return result;
}

}  // namespace junction::pipeline
