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

#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

namespace roadnet {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Integer grid cell of a quantized point.
struct Cell {
  int ix = 0;
  int iy = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Axis-aligned BEV window. Points are inside when x_min <= x < x_max and
// y_min <= y < y_max. Defaults are the ego-frame window used for training:
// 96 m x 64 m at 1 m resolution.
struct BevFrame {
  double x_min = -48.0;
  double x_max = 48.0;
  double y_min = -32.0;
  double y_max = 32.0;
  double resolution = 1.0;

  int grid_width() const;
  int grid_height() const;
  bool contains(Point p) const;

  // Front-right corner of the window, the anchor of the coordinate ordering.
  Point front_right() const { return {x_max, y_min}; }

  // Empty when the frame is usable by the codecs.
  std::vector<std::string> problems() const;

  friend bool operator==(const BevFrame&, const BevFrame&) = default;
};

// Largest number of cells per axis a coordinate token can address.
inline constexpr int kMaxGridCells = 200;

// Curve offset and width of the curve token range, in cells.
inline constexpr double kCurveOffset = 10.0;
inline constexpr int kCurveCells = 220;

// Truncating quantization onto the frame grid. Throws kOutOfRange when the
// point lies outside the frame.
Cell quantize(const BevFrame& frame, Point p);

// Cell centre.
Point dequantize(const BevFrame& frame, Cell c);

// Control points may leave the frame; they are shifted by kCurveOffset cells
// before truncation. Admissible grid values are [-10, 210).
Cell quantize_curve(const BevFrame& frame, Point ctrl);
Point dequantize_curve(const BevFrame& frame, Cell c);
bool curve_encodable(const BevFrame& frame, Point ctrl);

// Quadratic Bezier through p0, ctrl, p2.
Point bezier_point(Point p0, Point ctrl, Point p2, double t);

// n >= 2 samples at t_k = k/(n-1); the end samples are exactly p0 and p2.
std::vector<Point> sample_bezier(Point p0, Point ctrl, Point p2, int n);

}  // namespace roadnet
