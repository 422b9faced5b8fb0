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
#include <stdexcept>
#include <string>

namespace junction {

enum class ErrorKind {
  kInvalidArgument,
  kDegenerateGeometry,
  kDegenerateObservation,
  kResourceLimit,
  kInfeasible,
  kConfiguration,
  kAmbiguousAssociation,
  kCorruptRecording,
  kCorruptFile,
  kParse,
  kSchemaViolation,
  kUnsupportedVersion,
  kIo,
};

const char* to_string(ErrorKind kind);

/// Base of every error raised by the library. Typed outcomes that are not
/// failures (behind-camera, out-of-lifetime) use std::optional instead.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& m) : Error(ErrorKind::kInvalidArgument, m) {}
};

class DegenerateGeometry : public Error {
 public:
  explicit DegenerateGeometry(const std::string& m) : Error(ErrorKind::kDegenerateGeometry, m) {}
};

class DegenerateObservation : public Error {
 public:
  explicit DegenerateObservation(const std::string& m)
      : Error(ErrorKind::kDegenerateObservation, m) {}
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& m) : Error(ErrorKind::kResourceLimit, m) {}
};

class Infeasible : public Error {
 public:
  explicit Infeasible(const std::string& m) : Error(ErrorKind::kInfeasible, m) {}
};

class ConfigurationError : public Error {
 public:
  explicit ConfigurationError(const std::string& m) : Error(ErrorKind::kConfiguration, m) {}
};

class AmbiguousAssociation : public Error {
 public:
  explicit AmbiguousAssociation(const std::string& m)
      : Error(ErrorKind::kAmbiguousAssociation, m) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& m) : Error(ErrorKind::kIo, m) {}
};

class UnsupportedVersion : public Error {
 public:
  explicit UnsupportedVersion(const std::string& m) : Error(ErrorKind::kUnsupportedVersion, m) {}
};

/// Corrupt binary or structured file; `offset` is the byte offset at which the
/// problem was detected.
class CorruptFile : public Error {
 public:
  CorruptFile(const std::string& m, std::uint64_t offset);
  CorruptFile(ErrorKind kind, const std::string& m, std::uint64_t offset);
  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::uint64_t offset_;
};

class CorruptRecording : public CorruptFile {
 public:
  CorruptRecording(const std::string& m, std::uint64_t offset)
      : CorruptFile(ErrorKind::kCorruptRecording, m, offset) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& m, std::size_t line, std::size_t column);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A structurally valid document violating a schema rule. `path` names the
/// offending entity, e.g. "scenario/cameras/2/pose/position_m".
class SchemaViolation : public Error {
 public:
  SchemaViolation(const std::string& path, const std::string& rule);
  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace junction
