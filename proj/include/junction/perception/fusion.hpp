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

#include <span>
#include <vector>

#include "junction/perception/observation.hpp"

namespace junction::perception {

struct FusionOptions {
  /// Observations closer than this Mahalanobis distance (under the sum of
  /// their covariances) are fused.
  double gate = 3.0;
};

/// Connected components of the "within gate" relation among observations of
/// the same class and part, each listed by ascending index, ordered by their
/// first index. Throws InvalidArgument for mixed trigger times and
/// DegenerateObservation for a singular covariance.
std::vector<std::vector<std::size_t>> cluster_observations(std::span<const Observation3D> obs,
                                                           const FusionOptions& options = {});

/// Information-form combination: covariance (sum C_i^-1)^-1, mean
/// cov * sum C_i^-1 x_i. Throws DegenerateObservation for a singular
/// covariance and InvalidArgument for an empty group.
Observation3D fuse_group(std::span<const Observation3D> obs);

/// Clusters, then fuses each cluster.
std::vector<Observation3D> fuse(std::span<const Observation3D> obs, const FusionOptions& options = {});

}  // namespace junction::perception
