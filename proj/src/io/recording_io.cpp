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

#include "junction/io/recording_io.hpp"

#include <cstring>
#include <map>
#include <random>

#include "junction/common/digest.hpp"
#include "junction/common/error.hpp"
#include "junction/io/files.hpp"
#include "junction/io/sync_io.hpp"

namespace junction::io {

namespace {

constexpr char kMagic[4] = {'J', 'C', 'H', 'K'};
constexpr std::size_t kFileHeaderBytes = 4 + 2 + 2 + 2;

std::string chunk_file_name(int camera_id) { return "cam" + std::to_string(camera_id) + ".chunks"; }

Json file_entry(std::span<const std::uint8_t> bytes) {
  return {{"bytes", bytes.size()}, {"crc32", crc32(bytes)}};
}

std::vector<std::uint8_t> read_required(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw CorruptRecording("missing " + path.filename().string(), 0);
  return read_bytes(path);
}

template <typename T>
T manifest_field(const Json& m, const char* key) {
  const auto it = m.find(key);
  if (it == m.end()) throw CorruptRecording(std::string("manifest lacks ") + key, 0);
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw CorruptRecording(std::string("manifest field ") + key + " has the wrong type", 0);
  }
}

std::vector<pipeline::EncodedChunk> decode_chunk_file(const std::vector<std::uint8_t>& bytes, int camera_id,
                                                      PayloadMode mode, std::uint64_t payload_seed) {
  ByteReader r(bytes, true);
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw CorruptRecording("not a chunk file", 0);
  }
  r.skip(4);
  const auto version = r.u16();
  if (version != kRecordingFormatVersion) {
    throw UnsupportedVersion("chunk file version " + std::to_string(version) + " is not supported");
  }
  const std::size_t flags_offset = r.offset();
  const bool elided = (r.u16() & 1u) != 0;
  if (elided != (mode == PayloadMode::kElided)) {
    throw CorruptRecording("payload flag disagrees with manifest", flags_offset);
  }
  const std::size_t id_offset = r.offset();
  if (r.u16() != camera_id) throw CorruptRecording("camera id disagrees with file name", id_offset);

  std::vector<pipeline::EncodedChunk> out;
  while (r.remaining() > 0) {
    const std::size_t record_offset = r.offset();
    const std::uint32_t length = r.u32();
    if (length < kChunkHeaderBytes) throw CorruptRecording("chunk record too short", record_offset);
    if (length > r.remaining()) throw CorruptRecording("chunk record truncated", bytes.size());
    const std::size_t header_offset = r.offset();
    pipeline::EncodedChunk c;
    c.camera_id = r.u16();
    c.first_seq = r.u64();
    c.frame_count = r.u32();
    c.raw_bytes = r.u64();
    c.encoded_bytes = r.u64();
    const std::uint32_t stored_crc = r.u32();
    if (c.camera_id != camera_id) throw CorruptRecording("chunk of another camera", header_offset);
    if (c.frame_count == 0 || c.encoded_bytes == 0 || c.encoded_bytes > c.raw_bytes) {
      throw CorruptRecording("inconsistent chunk header", header_offset);
    }
    const std::size_t payload_len = length - kChunkHeaderBytes;
    const std::size_t expected_len = elided ? 0 : c.encoded_bytes;
    if (payload_len != expected_len) throw CorruptRecording("payload length disagrees with header", record_offset);
    std::uint32_t crc = crc32(std::span(bytes.data() + header_offset, kChunkHeaderBytes - 4));
    crc = crc32(std::span(bytes.data() + r.offset(), payload_len), crc);
    if (crc != stored_crc) throw CorruptRecording("chunk checksum mismatch", header_offset);
    if (!elided) {
      const auto expected = chunk_payload(payload_seed, c);
      if (std::memcmp(expected.data(), bytes.data() + r.offset(), payload_len) != 0) {
        throw CorruptRecording("payload differs from its seed", r.offset());
      }
    }
    r.skip(payload_len);
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::vector<std::uint8_t> chunk_payload(std::uint64_t payload_seed, const pipeline::EncodedChunk& chunk) {
  std::mt19937_64 rng(derive_seed(payload_seed, chunk.camera_id, chunk.first_seq));
  std::vector<std::uint8_t> out(chunk.encoded_bytes);
  for (std::size_t i = 0; i < out.size(); i += 8) {
    const std::uint64_t v = rng();
    for (std::size_t k = 0; k < 8 && i + k < out.size(); ++k) out[i + k] = static_cast<std::uint8_t>(v >> (8 * k));
  }
  return out;
}

std::vector<std::uint8_t> encode_chunk_file(const pipeline::Recording& recording, int camera_id, PayloadMode mode) {
  std::vector<std::uint8_t> out(kMagic, kMagic + 4);
  put_u16(out, kRecordingFormatVersion);
  put_u16(out, mode == PayloadMode::kElided ? 1 : 0);
  put_u16(out, static_cast<std::uint16_t>(camera_id));
  for (const auto& c : recording.chunks) {
    if (c.camera_id != camera_id) continue;
    const std::vector<std::uint8_t> payload =
        mode == PayloadMode::kFull ? chunk_payload(recording.payload_seed, c) : std::vector<std::uint8_t>{};
    put_u32(out, static_cast<std::uint32_t>(kChunkHeaderBytes + payload.size()));
    const std::size_t header_start = out.size();
    put_u16(out, static_cast<std::uint16_t>(c.camera_id));
    put_u64(out, c.first_seq);
    put_u32(out, c.frame_count);
    put_u64(out, c.raw_bytes);
    put_u64(out, c.encoded_bytes);
    std::uint32_t crc = crc32(std::span(out.data() + header_start, out.size() - header_start));
    crc = crc32(payload, crc);
    put_u32(out, crc);
    out.insert(out.end(), payload.begin(), payload.end());
  }
  return out;
}

Json pipeline_config_json(const pipeline::PipelineConfig& c) {
  Json j;
  j["workers"] = c.workers;
  j["worker_throughput_fps"] = c.worker_throughput_fps;
  j["worker_throughput_override"] = c.worker_throughput_override;
  j["assignment"] = c.assignment;
  j["channel_capacity"] = c.channel_capacity;
  j["writer_queue_chunks"] = c.writer_queue_chunks;
  j["chunk_frames"] = c.chunk_frames;
  j["drop_policy"] = c.drop_policy == pipeline::DropPolicy::kDropNewest ? "drop_newest" : "drop_oldest";
  j["bits_per_pixel"] = c.bits_per_pixel;
  j["ratio_min"] = c.ratio.r_min;
  j["ratio_max"] = c.ratio.r_max;
  j["writer_bandwidth_bps"] = c.writer_bandwidth_bps;
  j["duration_s"] = c.duration_s ? Json(*c.duration_s) : Json(nullptr);
  j["abort_at_s"] = c.abort_at_s ? Json(*c.abort_at_s) : Json(nullptr);
  j["start_utc_ns"] = c.start_utc_ns;
  j["latency_default_ns"] = c.latency.default_ns;
  Json per = Json::object();
  for (const auto& [id, ns] : c.latency.per_camera_ns) per[std::to_string(id)] = ns;
  j["latency_per_camera_ns"] = per;
  j["jitter_sd_ns"] = c.jitter_sd_ns;
  j["threads"] = c.threads;
  j["seed"] = c.seed;
  return j;
}

Json throughput_stats_json(const pipeline::ThroughputStats& s) {
  Json j;
  Json cams = Json::array();
  for (const auto& c : s.cameras) {
    cams.push_back({{"camera_id", c.camera_id},
                    {"produced", c.produced},
                    {"dropped", c.dropped},
                    {"encoded", c.encoded},
                    {"written", c.written},
                    {"raw_bytes_produced", c.raw_bytes_produced},
                    {"encoded_bytes_written", c.encoded_bytes_written},
                    {"queue_high_water", c.queue_high_water},
                    {"raw_bitrate_bps", c.raw_bitrate_bps},
                    {"encoded_bitrate_bps", c.encoded_bitrate_bps}});
  }
  j["cameras"] = cams;
  j["produced"] = s.produced;
  j["dropped"] = s.dropped;
  j["encoded"] = s.encoded;
  j["written"] = s.written;
  j["in_source_queues"] = s.in_source_queues;
  j["in_encoding"] = s.in_encoding;
  j["in_writer"] = s.in_writer;
  j["writer_queue_high_water"] = s.writer_queue_high_water;
  j["aggregate_raw_bitrate_bps"] = s.aggregate_raw_bitrate_bps;
  j["aggregate_encoded_bitrate_bps"] = s.aggregate_encoded_bitrate_bps;
  j["simulated_end_ns"] = s.simulated_end_ns;
  j["aborted"] = s.aborted;
  return j;
}

void write_recording(const std::filesystem::path& dir, const pipeline::Recording& recording,
                     const RecordingManifest& manifest) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());

  Json files = Json::object();
  for (int id : recording.camera_ids) {
    const auto bytes = encode_chunk_file(recording, id, manifest.payload);
    files[chunk_file_name(id)] = file_entry(bytes);
    write_bytes(dir / chunk_file_name(id), bytes);
  }
  const std::string sync_text = write_sync_csv(recording.stamps);
  const std::span sync_bytes(reinterpret_cast<const std::uint8_t*>(sync_text.data()), sync_text.size());
  files["sync.csv"] = file_entry(sync_bytes);
  write_text(dir / "sync.csv", sync_text);

  Json m;
  m["format_version"] = kRecordingFormatVersion;
  m["scenario_hash"] = manifest.scenario_hash;
  m["seed"] = manifest.seed;
  m["payload"] = manifest.payload == PayloadMode::kFull ? "full" : "elided";
  m["payload_seed"] = recording.payload_seed;
  m["clock"] = {{"start_utc_ns", recording.clock.start_utc_ns},
                {"period_ns", recording.clock.period_ns},
                {"jitter_sd_ns", recording.clock.jitter_sd_ns}};
  m["camera_ids"] = recording.camera_ids;
  Json order = Json::array();
  for (const auto& c : recording.chunks) order.push_back(c.camera_id);
  m["chunk_order"] = order;
  m["files"] = files;
  m["config"] = manifest.config;
  m["stats"] = manifest.stats;
  write_text(dir / "manifest.json", canonical_dump(m));
}

RecordingBundle read_recording(const std::filesystem::path& dir) {
  const auto manifest_path = dir / "manifest.json";
  if (!std::filesystem::exists(manifest_path)) throw CorruptRecording("missing manifest.json", 0);
  Json m;
  try {
    m = parse_json(read_text(manifest_path));
  } catch (const ParseError& e) {
    throw CorruptRecording(std::string("manifest.json: ") + e.what(), 0);
  }
  if (!m.is_object()) throw CorruptRecording("manifest.json is not an object", 0);
  const int version = manifest_field<int>(m, "format_version");
  if (version != kRecordingFormatVersion) {
    throw UnsupportedVersion("recording format version " + std::to_string(version) + " is not supported");
  }
  RecordingBundle b;
  auto& man = b.manifest;
  man.scenario_hash = manifest_field<std::string>(m, "scenario_hash");
  man.seed = manifest_field<std::uint64_t>(m, "seed");
  const auto payload = manifest_field<std::string>(m, "payload");
  if (payload != "full" && payload != "elided") throw CorruptRecording("unknown payload mode " + payload, 0);
  man.payload = payload == "full" ? PayloadMode::kFull : PayloadMode::kElided;
  man.config = manifest_field<Json>(m, "config");
  man.stats = manifest_field<Json>(m, "stats");

  auto& rec = b.recording;
  rec.payload_seed = manifest_field<std::uint64_t>(m, "payload_seed");
  const Json clock = manifest_field<Json>(m, "clock");
  rec.clock.start_utc_ns = manifest_field<std::int64_t>(clock, "start_utc_ns");
  rec.clock.period_ns = manifest_field<std::int64_t>(clock, "period_ns");
  rec.clock.jitter_sd_ns = manifest_field<std::int64_t>(clock, "jitter_sd_ns");
  rec.camera_ids = manifest_field<std::vector<int>>(m, "camera_ids");
  const auto order = manifest_field<std::vector<int>>(m, "chunk_order");
  const Json files = manifest_field<Json>(m, "files");

  const auto check_file = [&](const std::string& name, const std::vector<std::uint8_t>& bytes) {
    if (!files.contains(name)) throw CorruptRecording("manifest does not list " + name, 0);
    const Json entry = files[name];
    const auto size = manifest_field<std::uint64_t>(entry, "bytes");
    if (bytes.size() != size) {
      throw CorruptRecording(name + " has " + std::to_string(bytes.size()) + " bytes, manifest says " +
                                 std::to_string(size),
                             std::min<std::uint64_t>(bytes.size(), size));
    }
    if (crc32(bytes) != manifest_field<std::uint32_t>(entry, "crc32")) {
      throw CorruptRecording(name + " checksum mismatch", 0);
    }
  };

  std::map<int, std::vector<pipeline::EncodedChunk>> per_camera;
  for (int id : rec.camera_ids) {
    const auto bytes = read_required(dir / chunk_file_name(id));
    per_camera[id] = decode_chunk_file(bytes, id, man.payload, rec.payload_seed);
    check_file(chunk_file_name(id), bytes);
  }
  std::map<int, std::size_t> next;
  for (int id : order) {
    auto it = per_camera.find(id);
    if (it == per_camera.end() || next[id] >= it->second.size()) {
      throw CorruptRecording("chunk order disagrees with chunk files", 0);
    }
    rec.chunks.push_back(it->second[next[id]++]);
  }
  for (const auto& [id, chunks] : per_camera) {
    if (next[id] != chunks.size()) throw CorruptRecording("chunk order disagrees with chunk files", 0);
  }

  const auto sync_bytes = read_required(dir / "sync.csv");
  try {
    rec.stamps = read_sync_csv(std::string_view(reinterpret_cast<const char*>(sync_bytes.data()), sync_bytes.size()));
  } catch (const ParseError& e) {
    throw CorruptRecording(std::string("sync.csv: ") + e.what(), 0);
  }
  check_file("sync.csv", sync_bytes);
  return b;
}

}  // namespace junction::io
