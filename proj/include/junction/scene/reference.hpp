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

#include <map>
#include <string>

#include "junction/scene/scenario.hpp"

namespace junction::scene {

inline constexpr double kReferenceHFovDeg = 71.0;
inline constexpr int kReferenceWidthPx = 4096;
inline constexpr int kReferenceHeightPx = 2160;
inline constexpr double kReferenceFrameRateHz = 25.0;

/// The six-camera installation: a four-arm junction with a five-lane main
/// road, bicycle lane, three signalised crosswalks and four corner buildings.
/// Deterministic; the checked-in data/reference_scenario.json is its
/// canonical serialization.
Scenario reference_scenario();

/// Provenance notes keyed by entity path ("scenario/cameras/0", ...).
/// Values not fixed by the installation's description are marked
/// "layout-assumed".
std::map<std::string, std::string> reference_comments();

}  // namespace junction::scene
