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

#include "junction/common/error.hpp"

namespace junction {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid-argument";
    case ErrorKind::kDegenerateGeometry: return "degenerate-geometry";
    case ErrorKind::kDegenerateObservation: return "degenerate-observation";
    case ErrorKind::kResourceLimit: return "resource-limit";
    case ErrorKind::kInfeasible: return "infeasible";
    case ErrorKind::kConfiguration: return "configuration";
    case ErrorKind::kAmbiguousAssociation: return "ambiguous-association";
    case ErrorKind::kCorruptRecording: return "corrupt-recording";
    case ErrorKind::kCorruptFile: return "corrupt-file";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kSchemaViolation: return "schema-violation";
    case ErrorKind::kUnsupportedVersion: return "unsupported-version";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

CorruptFile::CorruptFile(const std::string& m, std::uint64_t offset)
    : CorruptFile(ErrorKind::kCorruptFile, m, offset) {}

CorruptFile::CorruptFile(ErrorKind kind, const std::string& m, std::uint64_t offset)
    : Error(kind, m + " (at byte offset " + std::to_string(offset) + ")"), offset_(offset) {}

ParseError::ParseError(const std::string& m, std::size_t line, std::size_t column)
    : Error(ErrorKind::kParse,
            m + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
      line_(line),
      column_(column) {}

SchemaViolation::SchemaViolation(const std::string& path, const std::string& rule)
    : Error(ErrorKind::kSchemaViolation, path + ": " + rule), path_(path) {}

}  // namespace junction
