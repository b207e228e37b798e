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

#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "kfp/phase.hpp"

namespace kfp::geometry {

using Point2 = std::array<double, 2>;
using Matrix2 = std::array<double, 4>;  // row-major

/// Local boundary graph x_2 = psi(x_1). The domain lies below the graph, so
/// the outward normal points towards +e_2.
class GraphFunction {
 public:
  using Fn = std::function<double(double)>;

  /// User supplied graph; derivatives are taken by central differences.
  explicit GraphFunction(Fn value);
  GraphFunction(Fn value, Fn slope, Fn curvature);

  static GraphFunction flat();
  /// psi(y) = c y^2
  static GraphFunction parabola(double c);
  /// Upper cap of the circle of the given radius centred at the origin.
  static GraphFunction circle_cap(double radius);

  double operator()(double y) const { return value_(y); }
  double slope(double y) const;
  double curvature(double y) const;

 private:
  Fn value_;
  Fn slope_;
  Fn curvature_;
};

class DomainGeometry {
 public:
  enum class Kind { interval, disk, graph };

  /// Omega = (0, length).
  static DomainGeometry interval(double length);
  /// Omega = disk of the given radius centred at the origin.
  static DomainGeometry disk(double radius);
  /// Omega = {x_2 < psi(x_1)} (only the local chart is represented).
  static DomainGeometry graph(GraphFunction psi);

  Kind kind() const { return kind_; }
  int dimension() const { return kind_ == Kind::interval ? 1 : 2; }
  double length() const { return extent_; }
  double radius() const { return extent_; }
  const GraphFunction& graph_function() const { return psi_; }

  /// Signed offset from the boundary: negative inside, zero on the boundary.
  /// Exact distance for the interval and disk, vertical offset for graphs.
  double boundary_offset(std::span<const double> x) const;

  /// Unit outward normal at a boundary point. Throws not_on_boundary with the
  /// measured distance when |offset| exceeds the tolerance.
  std::vector<double> normal_at(std::span<const double> x,
                                double tolerance = 1e-9) const;

 private:
  DomainGeometry(Kind kind, double extent, GraphFunction psi);

  Kind kind_;
  double extent_;
  GraphFunction psi_;
};

struct KappaCheck {
  double min_det = 0.0;
  double max_det = 0.0;
  bool within_bounds = false;
};

/// Boundary-flattening chart P(y) = m(y_1) + y_2 n(y_1) on (-R, R)^2 with
/// m(y_1) = (y_1, psi(y_1)) and n the unit outward normal of the graph.
/// Points with y_2 < 0 map into the domain.
class FlatteningChart {
 public:
  FlatteningChart(GraphFunction psi, double half_width, double kappa);

  /// Chart around the top point (0, radius) of a disk centred at the origin.
  static FlatteningChart for_disk(double radius, double half_width,
                                  double kappa);

  double half_width() const { return half_width_; }
  double kappa() const { return kappa_; }
  const GraphFunction& graph() const { return psi_; }

  bool in_chart(Point2 y) const;

  Point2 boundary_point(double y1) const;
  Point2 normal(double y1) const;
  /// Derivative of n with respect to y_1.
  Point2 normal_derivative(double y1) const;

  Point2 flatten(Point2 y) const;
  Matrix2 jacobian(Point2 y) const;
  double jacobian_determinant(Point2 y) const;

  /// Newton inverse of flatten, started from (x_1, x_2 - psi(x_1)).
  Point2 unflatten(Point2 x) const;

  /// Samples det(P') on a lattice of the chart domain and compares it with
  /// [1/kappa, kappa].
  KappaCheck check_kappa(int samples_per_axis = 41) const;

 private:
  GraphFunction psi_;
  double half_width_;
  double kappa_;
};

/// Mirror reflection in flattened coordinates: negates the last position and
/// velocity components, keeps t and the tangential components.
PhasePoint mirror_reflect(const PhasePoint& z);

}  // namespace kfp::geometry
