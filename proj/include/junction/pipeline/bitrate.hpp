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

#include "junction/geometry/camera.hpp"

namespace junction::pipeline {

inline constexpr int kRawBitsPerPixel = 8;
inline constexpr double kSecondsPerDay = 86400.0;

/// width * height * bits_per_pixel * fps, in bit/s. Throws InvalidArgument
/// for non-positive inputs.
double per_camera_bitrate(const geometry::CameraIntrinsics& intr, int bits_per_pixel, double fps);

double aggregate_bitrate(std::span<const geometry::CameraModel> cameras, int bits_per_pixel,
                         double fps);

/// Raw frame size in bytes, rounded up to whole bytes.
std::uint64_t frame_bytes(const geometry::CameraIntrinsics& intr, int bits_per_pixel);

/// Seconds of recording that fit into capacity_tb (decimal terabytes) at the
/// given raw aggregate bit rate and compression ratio:
/// capacity_tb * 1e12 * 8 / (bitrate / ratio).
double storage_duration(double capacity_tb, double aggregate_bitrate_bps, double ratio);

}  // namespace junction::pipeline
