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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "junction/common/canonical_json.hpp"
#include "junction/scene/scenario.hpp"

namespace junction::io {

inline constexpr int kScenarioSchemaVersion = 1;

/// Strict rejects unknown fields and invariant violations; lenient keeps
/// unknown fields for re-serialization and reports violations instead.
enum class LoadMode { kStrict, kLenient };

struct ScenarioDocument {
  int schema_version = kScenarioSchemaVersion;
  scene::Scenario scenario;
  /// Free-text annotations keyed by entity path, e.g. "scenario/cameras/0".
  std::map<std::string, std::string> comments;
  /// Lenient mode only: unknown fields as {entity path: {key: value}}.
  Json unknown_fields = Json::object();
  /// Lenient mode only: invariant violations found on load.
  std::vector<scene::Violation> violations;
};

/// The "scenario" object of a document. Angles are written in degrees.
Json scenario_to_json(const scene::Scenario& s);

/// Canonical document text; unknown fields are merged back at their paths.
std::string serialize_document(const ScenarioDocument& doc);

/// Throws ParseError (with line and column) for malformed text,
/// UnsupportedVersion for a schema_version other than 1, and SchemaViolation
/// naming the entity path for type errors, unknown fields (strict) and
/// invariant violations (strict).
ScenarioDocument parse_document(std::string_view text, LoadMode mode = LoadMode::kStrict);

ScenarioDocument load_document(const std::filesystem::path& path, LoadMode mode = LoadMode::kStrict);
void save_document(const ScenarioDocument& doc, const std::filesystem::path& path);

scene::Scenario load_scenario(const std::filesystem::path& path, LoadMode mode = LoadMode::kStrict);
void save_scenario(const scene::Scenario& s, const std::filesystem::path& path,
                   const std::map<std::string, std::string>& comments = {});

/// SHA-256 of the canonical scenario object; stable across key order and
/// whitespace of the source file.
std::string scenario_hash(const scene::Scenario& s);

/// The reference installation with its layout comments.
ScenarioDocument reference_document();

}  // namespace junction::io
