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

#include <random>

#include "junction/common/assignment.hpp"
#include "junction/common/canonical_json.hpp"
#include "junction/common/digest.hpp"
#include "junction/common/error.hpp"
#include "junction/common/polygon.hpp"
#include "oracles.hpp"

using namespace junction;

TEST(Assignment, MatchesBruteForceOnRandomMatrices) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> cost(0.0, 10.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const int rows = 1 + static_cast<int>(rng() % 5);
    const int cols = 1 + static_cast<int>(rng() % 5);
    std::vector<std::vector<double>> c(rows, std::vector<double>(cols));
    for (auto& row : c) {
      for (auto& v : row) v = unit(rng) < 0.3 ? kForbidden : cost(rng);
    }
    const auto [matches, best] = oracle::assignment_optimum(c);
    const auto r = solve_assignment(c);
    int got = 0;
    double total = 0.0;
    std::vector<bool> used(cols, false);
    for (int i = 0; i < rows; ++i) {
      const int j = r.row_to_col[i];
      if (j < 0) continue;
      ASSERT_TRUE(std::isfinite(c[i][j]));
      ASSERT_FALSE(used[j]);
      used[j] = true;
      ++got;
      total += c[i][j];
    }
    EXPECT_EQ(got, matches) << "trial " << trial;
    EXPECT_NEAR(total, best, 1e-9) << "trial " << trial;
    EXPECT_NEAR(r.total_cost, best, 1e-9);
  }
}

TEST(Assignment, EmptyAndAllForbidden) {
  EXPECT_TRUE(solve_assignment({}).row_to_col.empty());
  const auto r = solve_assignment({{kForbidden, kForbidden}});
  ASSERT_EQ(r.row_to_col.size(), 1u);
  EXPECT_EQ(r.row_to_col[0], -1);
}

TEST(CanonicalJson, SortedKeysAndFixedFloats) {
  Json j = {{"b", 1.5}, {"a", {1, 2, 3}}, {"c", {{"z", true}, {"y", "s"}}}};
  const std::string text = canonical_dump(j);
  EXPECT_LT(text.find("\"a\""), text.find("\"b\""));
  EXPECT_NE(text.find("1.500000"), std::string::npos);
  EXPECT_NE(text.find("[1, 2, 3]"), std::string::npos);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(canonical_dump(parse_json(text)), text);
  EXPECT_EQ(canonical_dump_line(j).find('\n'), std::string::npos);
}

TEST(CanonicalJson, ParseErrorCarriesPosition) {
  try {
    parse_json("{\n  \"a\": 1,\n  \"b\": ]\n}");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_GT(e.column(), 0u);
  }
}

TEST(Digest, KnownVectors) {
  const std::string s = "123456789";
  EXPECT_EQ(crc32({reinterpret_cast<const std::uint8_t*>(s.data()), s.size()}), 0xCBF43926u);
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(derive_seed(1, 2, 3), derive_seed(1, 2, 3));
  EXPECT_NE(derive_seed(1, 2, 3), derive_seed(1, 3, 2));
}

TEST(Polygon, AreaContainmentAndSimplicity) {
  const Polygon2 sq{Vec2(0, 0), Vec2(2, 0), Vec2(2, 2), Vec2(0, 2)};
  EXPECT_DOUBLE_EQ(std::abs(polygon_area(sq)), 4.0);
  EXPECT_TRUE(point_in_polygon(Vec2(1, 1), sq));
  EXPECT_FALSE(point_in_polygon(Vec2(3, 1), sq));
  EXPECT_TRUE(polygon_is_simple(sq));
  const Polygon2 bowtie{Vec2(0, 0), Vec2(2, 2), Vec2(2, 0), Vec2(0, 2)};
  EXPECT_FALSE(polygon_is_simple(bowtie));
  const Polyline2 line{Vec2(0, 0), Vec2(3, 0), Vec2(3, 4)};
  EXPECT_DOUBLE_EQ(polyline_length(line), 7.0);
  EXPECT_TRUE(polyline_point_at(line, 5.0).isApprox(Vec2(3, 2)));
}

TEST(Polygon, PointInPolygonAgreesWithWindingOracle) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int t = 0; t < 50; ++t) {
    const Polygon2 poly = oriented_rectangle(Vec2(u(rng), u(rng)), 1 + std::abs(u(rng)), 1 + std::abs(u(rng)), u(rng));
    for (int k = 0; k < 200; ++k) {
      const Vec2 p(u(rng), u(rng));
      EXPECT_EQ(point_in_polygon(p, poly), oracle::inside_polygon(p, poly));
    }
  }
}
