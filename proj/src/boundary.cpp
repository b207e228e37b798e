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
#include "kfp/boundary.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "kfp/error.hpp"

namespace kfp::boundary {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::invalid_argument, "normal and velocity dimensions differ");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

BoundaryClass classify(std::span<const double> n, std::span<const double> v,
                       double grazing_tolerance) {
  BoundaryClass c;
  c.normal_speed = dot(n, v);
  if (c.normal_speed > grazing_tolerance)
    c.tag = Flow::outgoing;
  else if (c.normal_speed < -grazing_tolerance)
    c.tag = Flow::incoming;
  return c;
}

std::vector<double> specular(std::span<const double> n, std::span<const double> v) {
  const double s = dot(n, v);
  std::vector<double> r(v.begin(), v.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= 2.0 * s * n[i];
  return r;
}

Maxwellian::Maxwellian(double theta, int dimension) : theta_(theta), d_(dimension) {
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw Error(ErrorCode::invalid_argument, "wall temperature must be positive");
  if (dimension < 1 || dimension > 3)
    throw Error(ErrorCode::invalid_argument, "Maxwellian dimension must be 1, 2 or 3");
  prefactor_ = std::pow(2.0 * std::numbers::pi, -(d_ - 1) / 2.0) *
               std::pow(theta_, -(d_ + 1) / 2.0);
}

double Maxwellian::operator()(double v) const {
  return prefactor_ * std::exp(-v * v / (2.0 * theta_));
}

double Maxwellian::operator()(std::span<const double> v) const {
  double s = 0.0;
  for (double x : v) s += x * x;
  return prefactor_ * std::exp(-s / (2.0 * theta_));
}

Maxwellian boundary_maxwellian(double theta, int dimension) {
  return Maxwellian(theta, dimension);
}

std::string spec_name(const BoundarySpec& spec) {
  return std::visit(Overloaded{[](const Inflow&) { return std::string("inflow"); },
                               [](const TabulatedInflow&) { return std::string("tabulated"); },
                               [](const Diffuse&) { return std::string("diffuse"); },
                               [](const Specular&) { return std::string("specular"); },
                               [](const DampedSpecular&) {
                                 return std::string("damped_specular");
                               }},
                    spec);
}

void validate(const BoundarySpec& spec) {
  if (auto* d = std::get_if<DampedSpecular>(&spec)) {
    if (!(d->a >= 0.0 && d->a <= 1.0))
      throw Error(ErrorCode::invalid_argument, "damping a must lie in [0, 1]");
  }
  if (auto* d = std::get_if<Diffuse>(&spec)) {
    if (!d->weight) throw Error(ErrorCode::invalid_argument, "diffuse weight is missing");
  }
  if (auto* d = std::get_if<TabulatedInflow>(&spec)) {
    if (!d->table) throw Error(ErrorCode::invalid_argument, "inflow table is missing");
  }
}

bool is_reflecting(const BoundarySpec& spec) {
  return std::holds_alternative<Diffuse>(spec) || std::holds_alternative<Specular>(spec) ||
         std::holds_alternative<DampedSpecular>(spec);
}

std::string Wall::name() const {
  std::ostringstream os;
  os << (index == 0 ? "left" : "right") << " wall at x=" << x;
  return os.str();
}

Flow Wall::flow(double v) const {
  double s = normal * v;
  return s > 0.0 ? Flow::outgoing : (s < 0.0 ? Flow::incoming : Flow::grazing);
}

double macroscopic_flux(std::span<const double> outgoing, const VelocityGrid& grid,
                        const Wall& wall) {
  if (static_cast<int>(outgoing.size()) != grid.size())
    throw Error(ErrorCode::missing_trace, "no outgoing trace on the " + wall.name());
  double sum = 0.0;
  for (int j = 0; j < grid.size(); ++j) {
    double s = wall.normal * grid.v[j];
    if (s <= 0.0) continue;
    if (std::isnan(outgoing[j])) {
      std::ostringstream os;
      os << "outgoing trace missing at v=" << grid.v[j] << " on the " << wall.name();
      throw Error(ErrorCode::missing_trace, os.str());
    }
    sum += grid.w[j] * s * outgoing[j];
  }
  return sum;
}

std::vector<double> apply_boundary(const BoundarySpec& spec, std::span<const double> outgoing,
                                   const VelocityGrid& grid, const Wall& wall, double t,
                                   int step) {
  const int m = grid.size();
  std::vector<double> in(m, 0.0);
  auto reflect = [&](double a) {
    if (static_cast<int>(outgoing.size()) != m)
      throw Error(ErrorCode::missing_trace, "no outgoing trace on the " + wall.name());
    for (int j = 0; j < m; ++j) {
      if (wall.flow(grid.v[j]) != Flow::incoming) continue;
      double o = outgoing[grid.mirror(j)];
      if (std::isnan(o))
        throw Error(ErrorCode::missing_trace, "outgoing trace missing on the " + wall.name());
      in[j] = a * o;
    }
  };
  std::visit(
      Overloaded{
          [&](const Inflow& s) {
            if (!s.g) return;
            for (int j = 0; j < m; ++j) {
              if (wall.flow(grid.v[j]) != Flow::incoming) continue;
              double g = s.g(t, wall.x, grid.v[j]);
              if (!std::isfinite(g)) {
                std::ostringstream os;
                os << "inflow data undefined at (t,v)=(" << t << ", " << grid.v[j]
                   << ") on the " << wall.name();
                throw Error(ErrorCode::missing_trace, os.str());
              }
              in[j] = g;
            }
          },
          [&](const TabulatedInflow& s) {
            const auto& table = *s.table;
            if (step < 0 || step >= static_cast<int>(table.size()) ||
                static_cast<int>(table[step].size()) <= wall.index ||
                static_cast<int>(table[step][wall.index].size()) != m) {
              std::ostringstream os;
              os << "tabulated inflow has no entry for step " << step << " on the "
                 << wall.name();
              throw Error(ErrorCode::missing_trace, os.str());
            }
            const auto& row = table[step][wall.index];
            for (int j = 0; j < m; ++j)
              if (wall.flow(grid.v[j]) == Flow::incoming) in[j] = row[j];
          },
          [&](const Diffuse& s) {
            const double ups = macroscopic_flux(outgoing, grid, wall);
            double norm = 1.0;
            if (s.discrete_unit_flux) {
              norm = 0.0;
              for (int j = 0; j < m; ++j)
                if (wall.flow(grid.v[j]) == Flow::incoming)
                  norm += grid.w[j] * std::abs(grid.v[j]) * s.weight(t, wall.x, grid.v[j]);
              if (!(norm > 0.0))
                throw Error(ErrorCode::invalid_argument,
                            "diffuse weight has no incoming flux on the grid");
            }
            for (int j = 0; j < m; ++j)
              if (wall.flow(grid.v[j]) == Flow::incoming)
                in[j] = s.weight(t, wall.x, grid.v[j]) * ups / norm;
          },
          [&](const Specular&) { reflect(1.0); },
          [&](const DampedSpecular& s) { reflect(s.a); },
      },
      spec);
  return in;
}

std::vector<double> boundary_measure(const VelocityGrid& grid, const Wall& wall) {
  std::vector<double> mu(grid.size());
  for (int j = 0; j < grid.size(); ++j) mu[j] = std::abs(wall.normal * grid.v[j]) * grid.w[j];
  return mu;
}

}  // namespace kfp::boundary
