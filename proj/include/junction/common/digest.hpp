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
#include <string>
#include <string_view>

namespace junction {

/// CRC-32 (IEEE 802.3 polynomial, zlib variant). `previous` chains calls.
std::uint32_t crc32(std::span<const std::uint8_t> bytes, std::uint32_t previous = 0);

/// Lower-case hex SHA-256 of `text`.
std::string sha256_hex(std::string_view text);

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t mix_seed(std::uint64_t x);

template <typename... Ts>
std::uint64_t derive_seed(std::uint64_t base, Ts... parts) {
  std::uint64_t h = mix_seed(base);
  ((h = mix_seed(h ^ static_cast<std::uint64_t>(parts))), ...);
  return h;
}

}  // namespace junction
