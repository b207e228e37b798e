// Copyright 2026 The kfp Authors
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
#include "kfp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "kfp/error.hpp"

namespace kfp::geometry {

namespace {

constexpr double kSlopeStep = 1e-6;
constexpr double kCurvatureStep = 1e-4;

std::string describe_offset(std::span<const double> x, double offset) {
  std::ostringstream os;
  os << "point (";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ") is at distance " << std::abs(offset) << " from the boundary";
  return os.str();
}

}  // namespace

GraphFunction::GraphFunction(Fn value) : value_(std::move(value)) {}

GraphFunction::GraphFunction(Fn value, Fn slope, Fn curvature)
    : value_(std::move(value)),
      slope_(std::move(slope)),
      curvature_(std::move(curvature)) {}

GraphFunction GraphFunction::flat() {
  return {[](double) { return 0.0; }, [](double) { return 0.0; },
          [](double) { return 0.0; }};
}

GraphFunction GraphFunction::parabola(double c) {
  return {[c](double y) { return c * y * y; },
          [c](double y) { return 2.0 * c * y; },
          [c](double) { return 2.0 * c; }};
}

GraphFunction GraphFunction::circle_cap(double radius) {
  if (!(radius > 0.0))
    throw Error(ErrorCode::invalid_argument, "circle radius must be positive");
  const double r2 = radius * radius;
  return {[r2](double y) { return std::sqrt(r2 - y * y); },
          [r2](double y) { return -y / std::sqrt(r2 - y * y); },
          [r2](double y) {
            double s = r2 - y * y;
            return -r2 / (s * std::sqrt(s));
          }};
}

double GraphFunction::slope(double y) const {
  if (slope_) return slope_(y);
  const double h = kSlopeStep;
  return (value_(y + h) - value_(y - h)) / (2.0 * h);
}

double GraphFunction::curvature(double y) const {
  if (curvature_) return curvature_(y);
  const double h = kCurvatureStep;
  return (value_(y + h) - 2.0 * value_(y) + value_(y - h)) / (h * h);
}

// DomainGeometry ------------------------------------------------------------

DomainGeometry::DomainGeometry(Kind kind, double extent, GraphFunction psi)
    : kind_(kind), extent_(extent), psi_(std::move(psi)) {}

DomainGeometry DomainGeometry::interval(double length) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw Error(ErrorCode::invalid_argument, "interval length must be positive");
  return {Kind::interval, length, GraphFunction::flat()};
}

DomainGeometry DomainGeometry::disk(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw Error(ErrorCode::invalid_argument, "disk radius must be positive");
  return {Kind::disk, radius, GraphFunction::flat()};
}

DomainGeometry DomainGeometry::graph(GraphFunction psi) {
  return {Kind::graph, 0.0, std::move(psi)};
}

double DomainGeometry::boundary_offset(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dimension())
    throw Error(ErrorCode::invalid_argument, "point dimension mismatch");
  switch (kind_) {
    case Kind::interval:
      // max(-x, x - X) is the signed distance to {0, X}
      return std::max(-x[0], x[0] - extent_);
    case Kind::disk:
      return std::hypot(x[0], x[1]) - extent_;
    case Kind::graph:
      return x[1] - psi_(x[0]);
  }
  return 0.0;
}

std::vector<double> DomainGeometry::normal_at(std::span<const double> x,
                                              double tolerance) const {
  const double off = boundary_offset(x);
  if (!(std::abs(off) <= tolerance))
    throw Error(ErrorCode::not_on_boundary, describe_offset(x, off));
  switch (kind_) {
    case Kind::interval:
      return {x[0] < 0.5 * extent_ ? -1.0 : 1.0};
    case Kind::disk: {
      double r = std::hypot(x[0], x[1]);
      return {x[0] / r, x[1] / r};
    }
    case Kind::graph: {
      double g = psi_.slope(x[0]);
      double s = std::hypot(g, 1.0);
      return {-g / s, 1.0 / s};
    }
  }
  return {};
}

// FlatteningChart -----------------------------------------------------------

FlatteningChart::FlatteningChart(GraphFunction psi, double half_width,
                                 double kappa)
    : psi_(std::move(psi)), half_width_(half_width), kappa_(kappa) {
  if (!(half_width > 0.0))
    throw Error(ErrorCode::invalid_argument, "chart half-width must be positive");
  if (!(kappa > 1.0))
    throw Error(ErrorCode::invalid_argument, "chart bound kappa must exceed 1");
}

FlatteningChart FlatteningChart::for_disk(double radius, double half_width,
                                          double kappa) {
  if (!(half_width < radius))
    throw Error(ErrorCode::invalid_argument,
                "disk chart half-width must be smaller than the radius");
  return {GraphFunction::circle_cap(radius), half_width, kappa};
}

bool FlatteningChart::in_chart(Point2 y) const {
  return std::abs(y[0]) < half_width_ && std::abs(y[1]) < half_width_;
}

Point2 FlatteningChart::boundary_point(double y1) const {
  return {y1, psi_(y1)};
}

Point2 FlatteningChart::normal(double y1) const {
  double g = psi_.slope(y1);
  double s = std::hypot(g, 1.0);
  return {-g / s, 1.0 / s};
}

Point2 FlatteningChart::normal_derivative(double y1) const {
  // n = (-g, 1)/s, s = sqrt(1+g^2), so n' = g'(-1, -g)/s^3
  double g = psi_.slope(y1);
  double gp = psi_.curvature(y1);
  double s = std::hypot(g, 1.0);
  double f = gp / (s * s * s);
  return {-f, -f * g};
}

Point2 FlatteningChart::flatten(Point2 y) const {
  if (!in_chart(y)) {
    std::ostringstream os;
    os << "chart coordinates (" << y[0] << ", " << y[1]
       << ") outside (-R,R)^2 with R=" << half_width_;
    throw Error(ErrorCode::out_of_chart, os.str());
  }
  auto m = boundary_point(y[0]);
  auto n = normal(y[0]);
  return {m[0] + y[1] * n[0], m[1] + y[1] * n[1]};
}

Matrix2 FlatteningChart::jacobian(Point2 y) const {
  auto n = normal(y[0]);
  auto dn = normal_derivative(y[0]);
  double g = psi_.slope(y[0]);
  // columns: dP/dy1 = m' + y2 n', dP/dy2 = n
  return {1.0 + y[1] * dn[0], n[0], g + y[1] * dn[1], n[1]};
}

double FlatteningChart::jacobian_determinant(Point2 y) const {
  auto J = jacobian(y);
  return J[0] * J[3] - J[1] * J[2];
}

Point2 FlatteningChart::unflatten(Point2 x) const {
  const double lim = 0.999 * half_width_;
  Point2 y{x[0], x[1] - psi_(std::clamp(x[0], -lim, lim))};
  double res = 0.0;
  for (int it = 0; it < 60; ++it) {
    Point2 yc{std::clamp(y[0], -lim, lim), std::clamp(y[1], -lim, lim)};
    auto p = flatten(yc);
    double r0 = p[0] - x[0], r1 = p[1] - x[1];
    res = std::hypot(r0, r1);
    if (res < 1e-14 * (1.0 + std::hypot(x[0], x[1]))) {
      if (yc != y || !in_chart(y)) break;
      return y;
    }
    auto J = jacobian(yc);
    double det = J[0] * J[3] - J[1] * J[2];
    if (!(std::abs(det) > 0.0)) break;
    y = {yc[0] - (J[3] * r0 - J[1] * r1) / det,
         yc[1] - (-J[2] * r0 + J[0] * r1) / det};
  }
  if (!in_chart(y)) {
    std::ostringstream os;
    os << "point (" << x[0] << ", " << x[1] << ") is outside the chart image";
    throw Error(ErrorCode::out_of_chart, os.str());
  }
  std::ostringstream os;
  os << "inverse chart iteration did not converge, residual " << res;
  throw Error(ErrorCode::no_convergence, os.str());
}

KappaCheck FlatteningChart::check_kappa(int samples_per_axis) const {
  KappaCheck out;
  out.min_det = INFINITY;
  out.max_det = -INFINITY;
  const int n = std::max(samples_per_axis, 2);
  const double lim = half_width_ * (1.0 - 1e-9);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Point2 y{-lim + 2.0 * lim * i / (n - 1), -lim + 2.0 * lim * j / (n - 1)};
      double d = jacobian_determinant(y);
      out.min_det = std::min(out.min_det, d);
      out.max_det = std::max(out.max_det, d);
    }
  }
  out.within_bounds = out.min_det >= 1.0 / kappa_ && out.max_det <= kappa_;
  return out;
}

PhasePoint mirror_reflect(const PhasePoint& z) {
  PhasePoint r = z;
  if (!r.x.empty()) r.x.back() = -r.x.back();
  if (!r.v.empty()) r.v.back() = -r.v.back();
  return r;
}

}  // namespace kfp::geometry
