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

#include "junction/common/canonical_json.hpp"
#include "junction/pipeline/simulation.hpp"

namespace junction::io {

inline constexpr int kRecordingFormatVersion = 1;
/// Bytes of a chunk record header: camera_id u16, first_seq u64,
/// frame_count u32, raw_bytes u64, encoded_bytes u64, crc32 u32.
inline constexpr std::size_t kChunkHeaderBytes = 34;

enum class PayloadMode {
  /// Payload bytes follow every chunk header.
  kFull,
  /// Headers only; payloads can be regenerated from the payload seed.
  kElided,
};

struct RecordingManifest {
  int format_version = kRecordingFormatVersion;
  std::string scenario_hash;
  std::uint64_t seed = 0;
  PayloadMode payload = PayloadMode::kElided;
  Json config = Json::object();
  Json stats = Json::object();
};

struct RecordingBundle {
  pipeline::Recording recording;
  RecordingManifest manifest;
};

/// Deterministic pseudo-random payload of a chunk, encoded_bytes long.
std::vector<std::uint8_t> chunk_payload(std::uint64_t payload_seed, const pipeline::EncodedChunk& chunk);

/// File image of cam<N>.chunks: magic "JCHK", u16 version, u16 flags
/// (bit 0: payload elided), u16 camera id, then per chunk a u32 record
/// length followed by the header and payload. The CRC covers the header
/// fields before it and the payload bytes present.
std::vector<std::uint8_t> encode_chunk_file(const pipeline::Recording& recording, int camera_id, PayloadMode mode);

Json pipeline_config_json(const pipeline::PipelineConfig& config);
Json throughput_stats_json(const pipeline::ThroughputStats& stats);

/// Writes manifest.json, cam<N>.chunks per camera and sync.csv into `dir`,
/// creating it when needed. The manifest also lists the chunk write order
/// and the size and CRC of every data file.
void write_recording(const std::filesystem::path& dir, const pipeline::Recording& recording,
                     const RecordingManifest& manifest);

/// Inverse of write_recording. Throws CorruptRecording (with the byte offset
/// inside the offending file) for missing files, truncation, checksum
/// mismatches or inconsistent headers, and UnsupportedVersion for unknown
/// format versions.
RecordingBundle read_recording(const std::filesystem::path& dir);

}  // namespace junction::io
