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

#include "junction/common/digest.hpp"

#include <openssl/evp.h>
#include <zlib.h>

#include <array>
#include <cstdio>
#include <memory>

#include "junction/common/error.hpp"

namespace junction {

std::uint32_t crc32(std::span<const std::uint8_t> bytes, std::uint32_t previous) {
  uLong crc = previous;
  const std::uint8_t* data = bytes.data();
  std::size_t remaining = bytes.size();
  // zlib takes uInt lengths.
  constexpr std::size_t kBlock = 1u << 30;
  while (remaining > 0) {
    const std::size_t n = remaining < kBlock ? remaining : kBlock;
    crc = ::crc32(crc, data, static_cast<uInt>(n));
    data += n;
    remaining -= n;
  }
  return static_cast<std::uint32_t>(crc);
}

std::string sha256_hex(std::string_view text) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), text.data(), text.size()) != 1 ||
      EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1) {
    throw IoError("sha256 computation failed");
  }
  std::string hex;
  hex.reserve(len * 2);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace junction
