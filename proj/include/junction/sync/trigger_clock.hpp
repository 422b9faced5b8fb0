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
#include <vector>

namespace junction::sync {

/// GPS-disciplined trigger: exposures fire exactly at start + k * period.
/// Jitter applies to frame arrival only.
struct TriggerClock {
  std::int64_t start_utc_ns = 0;
  std::int64_t period_ns = 40'000'000;
  std::int64_t jitter_sd_ns = 0;

  bool operator==(const TriggerClock&) const = default;
};

/// Clock with period round(1e9 / rate_hz). Throws InvalidArgument unless the
/// rate is positive and the period is at least 1 ns.
TriggerClock clock_for_rate(double rate_hz, std::int64_t start_utc_ns = 0);

/// Seconds to integer nanoseconds, rounded to nearest.
std::int64_t seconds_to_ns(double seconds);

/// floor(duration / period) + 1. Throws InvalidArgument for a non-positive
/// duration or an invalid clock.
std::int64_t trigger_count(const TriggerClock& clock, double duration_s);

std::int64_t trigger_time(const TriggerClock& clock, std::int64_t seq);

std::vector<std::int64_t> generate_triggers(const TriggerClock& clock, double duration_s);

}  // namespace junction::sync
