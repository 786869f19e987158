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

#include "roadnet/geometry.hpp"

#include <algorithm>
#include <sstream>

#include "roadnet/error.hpp"

namespace roadnet {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kInvalidGraph: return "invalid_graph";
    case ErrorCode::kCapacityExceeded: return "capacity_exceeded";
    case ErrorCode::kOutOfRange: return "out_of_range";
    case ErrorCode::kMalformedSequence: return "malformed_sequence";
    case ErrorCode::kParseError: return "parse_error";
    case ErrorCode::kNotFound: return "not_found";
    case ErrorCode::kContractViolation: return "contract_violation";
  }
  return "unknown";
}

int BevFrame::grid_width() const {
  return static_cast<int>(std::ceil((x_max - x_min) / resolution - 1e-9));
}

int BevFrame::grid_height() const {
  return static_cast<int>(std::ceil((y_max - y_min) / resolution - 1e-9));
}

bool BevFrame::contains(Point p) const {
  return p.x >= x_min && p.x < x_max && p.y >= y_min && p.y < y_max;
}

std::vector<std::string> BevFrame::problems() const {
  std::vector<std::string> out;
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    out.emplace_back("resolution must be positive");
    return out;
  }
  if (!(x_max > x_min)) out.emplace_back("x_max must exceed x_min");
  if (!(y_max > y_min)) out.emplace_back("y_max must exceed y_min");
  if (out.empty()) {
    if (grid_width() > kMaxGridCells) out.emplace_back("x extent exceeds 200 cells");
    if (grid_height() > kMaxGridCells) out.emplace_back("y extent exceeds 200 cells");
  }
  return out;
}

namespace {

std::string describe(Point p) {
  std::ostringstream os;
  os << "(" << p.x << ", " << p.y << ")";
  return os.str();
}

}  // namespace

Cell quantize(const BevFrame& frame, Point p) {
  if (!frame.contains(p)) {
    throw Error(ErrorCode::kOutOfRange, "point " + describe(p) + " lies outside the frame");
  }
  Cell c{static_cast<int>(std::floor((p.x - frame.x_min) / frame.resolution)),
         static_cast<int>(std::floor((p.y - frame.y_min) / frame.resolution))};
  // Guard against rounding pushing x just below x_max onto the next cell.
  c.ix = std::min(c.ix, frame.grid_width() - 1);
  c.iy = std::min(c.iy, frame.grid_height() - 1);
  return c;
}

Point dequantize(const BevFrame& frame, Cell c) {
  return {frame.x_min + (c.ix + 0.5) * frame.resolution,
          frame.y_min + (c.iy + 0.5) * frame.resolution};
}

namespace {

double curve_grid_x(const BevFrame& frame, double x) {
  return (x - frame.x_min) / frame.resolution + kCurveOffset;
}

double curve_grid_y(const BevFrame& frame, double y) {
  return (y - frame.y_min) / frame.resolution + kCurveOffset;
}

}  // namespace

bool curve_encodable(const BevFrame& frame, Point ctrl) {
  const double gx = curve_grid_x(frame, ctrl.x);
  const double gy = curve_grid_y(frame, ctrl.y);
  return std::isfinite(gx) && std::isfinite(gy) && gx >= 0.0 && gx < kCurveCells &&
         gy >= 0.0 && gy < kCurveCells;
}

Cell quantize_curve(const BevFrame& frame, Point ctrl) {
  if (!curve_encodable(frame, ctrl)) {
    throw Error(ErrorCode::kOutOfRange,
                "control point " + describe(ctrl) + " outside the encodable curve range");
  }
  return {static_cast<int>(curve_grid_x(frame, ctrl.x)),
          static_cast<int>(curve_grid_y(frame, ctrl.y))};
}

Point dequantize_curve(const BevFrame& frame, Cell c) {
  return {frame.x_min + (c.ix + 0.5 - kCurveOffset) * frame.resolution,
          frame.y_min + (c.iy + 0.5 - kCurveOffset) * frame.resolution};
}

Point bezier_point(Point p0, Point ctrl, Point p2, double t) {
  const double u = 1.0 - t;
  return {u * u * p0.x + 2.0 * u * t * ctrl.x + t * t * p2.x,
          u * u * p0.y + 2.0 * u * t * ctrl.y + t * t * p2.y};
}

std::vector<Point> sample_bezier(Point p0, Point ctrl, Point p2, int n) {
  if (n < 2) throw Error(ErrorCode::kInvalidArgument, "sample count must be at least 2");
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  out.push_back(p0);
  for (int k = 1; k + 1 < n; ++k) {
    out.push_back(bezier_point(p0, ctrl, p2, static_cast<double>(k) / (n - 1)));
  }
  out.push_back(p2);
  return out;
}

}  // namespace roadnet
