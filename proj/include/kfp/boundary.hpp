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

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kfp/grid.hpp"

namespace kfp::boundary {

enum class Flow { outgoing, incoming, grazing };

struct BoundaryClass {
  Flow tag = Flow::grazing;
  double normal_speed = 0.0;  // n . v
};

/// Outgoing iff n.v > tol, incoming iff n.v < -tol, grazing otherwise.
BoundaryClass classify(std::span<const double> n, std::span<const double> v,
                       double grazing_tolerance = 0.0);

/// v - 2 (n.v) n.
std::vector<double> specular(std::span<const double> n, std::span<const double> v);

/// M(v) = (2 pi)^{-(d-1)/2} Theta^{-(d+1)/2} exp(-|v|^2 / (2 Theta)), which
/// carries unit incoming flux through any unit normal.
class Maxwellian {
 public:
  Maxwellian(double theta, int dimension);

  double operator()(double v) const;
  double operator()(std::span<const double> v) const;
  double theta() const { return theta_; }
  int dimension() const { return d_; }

 private:
  double theta_;
  int d_;
  double prefactor_;
};

Maxwellian boundary_maxwellian(double theta, int dimension);

using PhaseFn = std::function<double(double t, double x, double v)>;

/// gamma_- f = g(t, x, v). A missing g is the absorbing condition g = 0.
struct Inflow {
  PhaseFn g;
  /// Solvers may cache g when it does not depend on t.
  bool time_dependent = true;
};

/// Incoming traces given per time step: table[step][wall][j] with wall 0 the
/// left end, 1 the right end. Used by the fixed-point iterations.
struct TabulatedInflow {
  std::shared_ptr<const std::vector<std::vector<std::vector<double>>>> table;
};

/// gamma_- f = M(t, x, v) Upsilon[f]. With discrete_unit_flux the weight is
/// rescaled so that its incoming flux on the grid is exactly one.
struct Diffuse {
  PhaseFn weight;
  bool discrete_unit_flux = true;
};

struct Specular {};

struct DampedSpecular {
  double a = 1.0;
};

using BoundarySpec = std::variant<Inflow, TabulatedInflow, Diffuse, Specular, DampedSpecular>;

std::string spec_name(const BoundarySpec& spec);
/// Rejects a outside [0, 1] and empty diffuse weights.
void validate(const BoundarySpec& spec);
/// True when incoming traces depend on the outgoing ones.
bool is_reflecting(const BoundarySpec& spec);

/// A spatial boundary point of the 1D domain: position and outward normal.
struct Wall {
  double x = 0.0;
  double normal = -1.0;
  int index = 0;  // 0 left, 1 right

  std::string name() const;
  Flow flow(double v) const;
};

/// Upsilon[f] = sum_j w_j f_j (n v_j)_+ over the outgoing nodes of one wall.
/// Throws missing_trace naming the wall when an outgoing value is absent.
double macroscopic_flux(std::span<const double> outgoing, const VelocityGrid& grid,
                        const Wall& wall);

/// Incoming trace values on all velocity nodes of the wall (zero on
/// outgoing and grazing nodes). step indexes tabulated data.
std::vector<double> apply_boundary(const BoundarySpec& spec, std::span<const double> outgoing,
                                   const VelocityGrid& grid, const Wall& wall, double t,
                                   int step = 0);

/// Boundary measure weights |n v_j| w_j for one wall; exactly zero on the
/// grazing node.
std::vector<double> boundary_measure(const VelocityGrid& grid, const Wall& wall);

}  // namespace kfp::boundary
