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

#include "junction/sync/trigger_clock.hpp"

#include <cmath>

#include "junction/common/error.hpp"

namespace junction::sync {

namespace {

void check_clock(const TriggerClock& c) {
  if (c.period_ns <= 0) throw InvalidArgument("trigger period must be positive");
  if (c.jitter_sd_ns < 0) throw InvalidArgument("jitter standard deviation must be non-negative");
}

}  // namespace

TriggerClock clock_for_rate(double rate_hz, std::int64_t start_utc_ns) {
  if (!(rate_hz > 0.0) || !std::isfinite(rate_hz)) {
    throw InvalidArgument("frame rate must be positive");
  }
  const double period = std::round(1e9 / rate_hz);
  if (period < 1.0) throw InvalidArgument("frame rate exceeds 1 GHz");
  return TriggerClock{start_utc_ns, static_cast<std::int64_t>(period), 0};
}

std::int64_t seconds_to_ns(double seconds) {
  return static_cast<std::int64_t>(std::llround(seconds * 1e9));
}

std::int64_t trigger_count(const TriggerClock& clock, double duration_s) {
  check_clock(clock);
  if (!(duration_s > 0.0) || !std::isfinite(duration_s)) {
    throw InvalidArgument("duration must be positive");
  }
  return seconds_to_ns(duration_s) / clock.period_ns + 1;
}

std::int64_t trigger_time(const TriggerClock& clock, std::int64_t seq) {
  return clock.start_utc_ns + seq * clock.period_ns;
}

std::vector<std::int64_t> generate_triggers(const TriggerClock& clock, double duration_s) {
  const std::int64_t n = trigger_count(clock, duration_s);
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t k = 0; k < n; ++k) out.push_back(trigger_time(clock, k));
  return out;
}

}  // namespace junction::sync
