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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "junction/common/error.hpp"
#include "junction/sync/association.hpp"
#include "junction/sync/trigger_clock.hpp"

using namespace junction;
using namespace junction::sync;

namespace {
constexpr std::int64_t kP = 40'000'000;
}

TEST(Triggers, CountsAndSpacing) {
  const auto clock = clock_for_rate(25.0);
  EXPECT_EQ(clock.period_ns, kP);
  const auto t = generate_triggers(clock, 1.0);
  ASSERT_EQ(t.size(), 26u);
  for (std::size_t i = 1; i < t.size(); ++i) EXPECT_EQ(t[i] - t[i - 1], kP);
  EXPECT_EQ(generate_triggers(clock_for_rate(1.0), 0.5).size(), 1u);
  EXPECT_EQ(trigger_count(clock, 60.0), 1501);
  EXPECT_THROW(trigger_count(clock, 0.0), InvalidArgument);
  EXPECT_THROW(clock_for_rate(0.0), InvalidArgument);
}

TEST(Triggers, ExactIntegerArithmeticFarFromEpoch) {
  TriggerClock clock;
  clock.start_utc_ns = 1'700'000'000'123'456'789;
  const auto t = generate_triggers(clock, 3600.0);
  ASSERT_EQ(t.size(), 90001u);
  EXPECT_EQ(t.back(), clock.start_utc_ns + 90000 * kP);
  EXPECT_EQ(trigger_time(clock, 12345), clock.start_utc_ns + 12345 * kP);
}

TEST(Associate, NearestTriggerRules) {
  TriggerClock clock;
  clock.start_utc_ns = 1000;
  const std::int64_t lat = 7'000'000;
  EXPECT_EQ(nearest_trigger(clock, 1000 + 3 * kP + lat, lat), 3);
  EXPECT_EQ(nearest_trigger(clock, 1000 + 3 * kP + lat + 49 * kP / 100, lat), 3);
  EXPECT_EQ(nearest_trigger(clock, 1000 + 3 * kP + lat + kP / 2, lat), 3);
  EXPECT_EQ(nearest_trigger(clock, 1000 + 3 * kP + lat + kP / 2 + 1, lat), 4);
}

TEST(Associate, AssignsTriggersAndSortsByCamera) {
  TriggerClock clock;
  LatencyModel lat;
  lat.per_camera_ns[2] = 5'000'000;
  std::vector<RawFrame> frames{{2, 5'000'000 + 100}, {1, 10}, {2, kP + 5'000'000}, {1, kP + 3}};
  const auto out = associate(frames, clock, lat);
  ASSERT_EQ(out.size(), 4u);
  EXPECT_EQ(out[0], (FrameStamp{1, 0, 0, 10}));
  EXPECT_EQ(out[1], (FrameStamp{1, 1, kP, kP + 3}));
  EXPECT_EQ(out[2].camera_id, 2);
  EXPECT_EQ(out[3].seq, 1);
}

TEST(Associate, AmbiguityNamesBothFrames) {
  TriggerClock clock;
  std::vector<RawFrame> frames{{1, 100}, {1, 200}};
  try {
    associate(frames, clock);
    FAIL();
  } catch (const AmbiguousAssociation& e) {
    const std::string m = e.what();
    EXPECT_NE(m.find("100"), std::string::npos);
    EXPECT_NE(m.find("200"), std::string::npos);
  }
}

TEST(Associate, IdempotentAndOrderIndependentAcrossCameras) {
  TriggerClock clock;
  clock.jitter_sd_ns = kP / 10;
  const std::vector<int> ids{1, 2, 3};
  const auto sim = simulate_arrivals(ids, clock, 200, {}, 17);
  const auto a = associate(sim.frames, clock);
  // Interleave cameras differently while keeping per-camera order.
  auto shuffled = sim.frames;
  std::stable_sort(shuffled.begin(), shuffled.end(),
                   [](const RawFrame& x, const RawFrame& y) { return x.arrival_ns < y.arrival_ns; });
  EXPECT_EQ(associate(shuffled, clock), a);
  std::vector<RawFrame> again;
  for (const auto& f : a) again.push_back({f.camera_id, f.arrival_ns});
  EXPECT_EQ(associate(again, clock), a);
}

TEST(Associate, JitterBelowSixthOfPeriodHasNoErrors) {
  TriggerClock clock;
  clock.start_utc_ns = 1'600'000'000'000'000'000;
  clock.jitter_sd_ns = kP / 6 - 1;
  LatencyModel lat;
  lat.default_ns = 3'000'000;
  const std::vector<int> ids{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  const auto sim = simulate_arrivals(ids, clock, 10'000, lat, 99);
  ASSERT_EQ(sim.frames.size(), 100'000u);
  for (const auto& f : sim.frames) ASSERT_GE(f.arrival_ns, clock.start_utc_ns);
  auto truth = sim.truth;
  std::sort(truth.begin(), truth.end(),
            [](const FrameStamp& x, const FrameStamp& y) { return std::pair(x.camera_id, x.seq) < std::pair(y.camera_id, y.seq); });
  const auto got = associate(sim.frames, clock, lat);
  ASSERT_EQ(got.size(), truth.size());
  std::size_t errors = 0;
  for (std::size_t i = 0; i < got.size(); ++i) {
    errors += got[i].seq != truth[i].seq || got[i].trigger_utc_ns != truth[i].trigger_utc_ns;
    ASSERT_GE(got[i].arrival_ns, got[i].trigger_utc_ns);
  }
  EXPECT_EQ(errors, 0u);
}

TEST(Drops, CompleteSingleAndBurst) {
  TriggerClock clock;
  std::vector<FrameStamp> frames;
  for (int cam : {1, 2}) {
    for (std::int64_t s = 0; s < 50; ++s) frames.push_back({cam, s, s * kP, s * kP + 5});
  }
  EXPECT_TRUE(detect_drops(frames, clock).empty());

  auto one = frames;
  one.erase(one.begin() + 10);
  const auto r1 = detect_drops(one, clock);
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_EQ(r1[0].camera_id, 1);
  EXPECT_EQ(r1[0].missing_trigger_ns, (std::vector<std::int64_t>{10 * kP}));

  auto burst = frames;
  burst.erase(burst.begin() + 70, burst.begin() + 75);
  const auto r5 = detect_drops(burst, clock);
  ASSERT_EQ(r5.size(), 1u);
  EXPECT_EQ(r5[0].camera_id, 2);
  EXPECT_EQ(r5[0].missing_trigger_ns, (std::vector<std::int64_t>{20 * kP, 21 * kP, 22 * kP, 23 * kP, 24 * kP}));
}

TEST(Drops, ExpectedRangeIncludesTailAndSilentCameras) {
  TriggerClock clock;
  std::vector<FrameStamp> frames;
  for (std::int64_t s = 0; s < 8; ++s) frames.push_back({1, s, s * kP, s * kP});
  const std::vector<int> ids{1, 2};
  const auto r = detect_drops(frames, clock, ids, 10);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].missing_trigger_ns, (std::vector<std::int64_t>{8 * kP, 9 * kP}));
  EXPECT_EQ(r[1].missing_trigger_ns.size(), 10u);
}
