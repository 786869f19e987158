// Copyright 2026 The roadnet-seq Authors
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

#include <cmath>

#include "roadnet/error.hpp"
#include "roadnet/geometry.hpp"

namespace roadnet {
namespace {

TEST(Frame, DefaultWindowIs96By64Cells) {
  const BevFrame f;
  EXPECT_EQ(f.grid_width(), 96);
  EXPECT_EQ(f.grid_height(), 64);
  EXPECT_TRUE(f.problems().empty());
}

TEST(Frame, RejectsGridsWiderThanTokenRange) {
  EXPECT_FALSE((BevFrame{0, 201, 0, 10, 1.0}).problems().empty());
  EXPECT_TRUE((BevFrame{0, 200, 0, 200, 1.0}).problems().empty());
  EXPECT_TRUE((BevFrame{0, 100, 0, 100, 0.5}).problems().empty());
  EXPECT_FALSE((BevFrame{0, 10, 0, 10, 0.0}).problems().empty());
  EXPECT_FALSE((BevFrame{0, 10, 0, 10, -1.0}).problems().empty());
  EXPECT_FALSE((BevFrame{5, 5, 0, 10, 1.0}).problems().empty());
}

TEST(Frame, HalfOpenContainment) {
  const BevFrame f;
  EXPECT_TRUE(f.contains({-48, -32}));
  EXPECT_FALSE(f.contains({48, 0}));
  EXPECT_FALSE(f.contains({0, 32}));
  EXPECT_TRUE(f.contains({47.999, 31.999}));
  EXPECT_FALSE(f.contains({NAN, 0}));
}

TEST(Quantize, FrameOriginIsCellZero) {
  EXPECT_EQ(quantize(BevFrame{}, {-48, -32}), (Cell{0, 0}));
}

TEST(Quantize, TruncatesTheIntegerPart) {
  EXPECT_EQ(quantize(BevFrame{}, {-47.01, -32}), (Cell{0, 0}));
}

TEST(Quantize, EgoOriginMapsToCell48And32) {
  EXPECT_EQ(quantize(BevFrame{}, {0.0, 0.0}), (Cell{48, 32}));
}

TEST(Quantize, OutsideFrameIsOutOfRange) {
  try {
    quantize(BevFrame{}, {48.0, 0.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
}

TEST(Quantize, DequantizeReturnsCellCentre) {
  const BevFrame f;
  const Point p = dequantize(f, {48, 32});
  EXPECT_DOUBLE_EQ(p.x, 0.5);
  EXPECT_DOUBLE_EQ(p.y, 0.5);
  const BevFrame half{0, 50, 0, 50, 0.5};
  EXPECT_DOUBLE_EQ(dequantize(half, {3, 4}).x, 1.75);
}

TEST(Quantize, RoundTripWithinHalfCell) {
  const BevFrame f{-10, 10, -5, 5, 0.25};
  for (double x = -10; x < 10; x += 0.37) {
    for (double y = -5; y < 5; y += 0.41) {
      const Point q = dequantize(f, quantize(f, {x, y}));
      EXPECT_LE(std::abs(q.x - x), 0.125 + 1e-12);
      EXPECT_LE(std::abs(q.y - y), 0.125 + 1e-12);
    }
  }
}

TEST(CurveQuantize, OffsetByTenCells) {
  // Frame starting at 0 so grid values equal metres.
  const BevFrame f{0, 200, 0, 200, 1.0};
  EXPECT_EQ(quantize_curve(f, {-3.2, 4.0}), (Cell{6, 14}));
  EXPECT_EQ(quantize_curve(f, {-10.0, 0.0}).ix, 0);
  EXPECT_EQ(quantize_curve(f, {209.99, 0.0}).ix, 219);
}

TEST(CurveQuantize, AdmissibleRangeIsMinus10To210Cells) {
  const BevFrame f{0, 200, 0, 200, 1.0};
  EXPECT_TRUE(curve_encodable(f, {-10.0, -10.0}));
  EXPECT_TRUE(curve_encodable(f, {209.9, 209.9}));
  EXPECT_FALSE(curve_encodable(f, {-10.01, 0}));
  EXPECT_FALSE(curve_encodable(f, {210.0, 0}));
  EXPECT_THROW(quantize_curve(f, {210.0, 0}), Error);
  const BevFrame ego;
  // The ego frame starts at -48 m, so -58 m is the lowest admissible ctrl value.
  EXPECT_TRUE(curve_encodable(ego, {-58.0, -42.0}));
  EXPECT_FALSE(curve_encodable(ego, {-58.5, 0.0}));
}

TEST(Bezier, MidpointOfHandExample) {
  const Point p = bezier_point({0, 0}, {1, 2}, {2, 0}, 0.5);
  EXPECT_DOUBLE_EQ(p.x, 1.0);
  EXPECT_DOUBLE_EQ(p.y, 1.0);
}

TEST(Bezier, TwoSamplesAreTheEndpoints) {
  const auto s = sample_bezier({1, 2}, {7, -3}, {4, 5}, 2);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0], (Point{1, 2}));
  EXPECT_EQ(s[1], (Point{4, 5}));
}

TEST(Bezier, CollinearMidControlStaysOnSegment) {
  const auto s = sample_bezier({0, 0}, {2, 1}, {4, 2}, 17);
  for (const Point& p : s) EXPECT_NEAR(p.y, p.x / 2.0, 1e-12);
}

TEST(Bezier, FewerThanTwoSamplesIsAnError) {
  EXPECT_THROW(sample_bezier({0, 0}, {1, 1}, {2, 2}, 1), Error);
}

TEST(Bezier, SamplesAreFiniteWithExactEnds) {
  const Point a{-47.3, 12.1}, c{60.0, -40.0}, b{3.3, -31.9};
  const auto s = sample_bezier(a, c, b, 100);
  ASSERT_EQ(s.size(), 100u);
  EXPECT_EQ(s.front(), a);
  EXPECT_EQ(s.back(), b);
  for (const Point& p : s) EXPECT_TRUE(std::isfinite(p.x) && std::isfinite(p.y));
}

}  // namespace
}  // namespace roadnet
