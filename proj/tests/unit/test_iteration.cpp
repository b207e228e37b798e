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
#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "kfp/iteration.hpp"

using namespace kfp;
using namespace kfp::iteration;

namespace {

Problem reference_problem(int n = 40) {
  Problem p;
  p.xgrid = SpaceGrid::uniform(1.0, n);
  p.vgrid = VelocityGrid::uniform(5.0, n);
  p.dt = 0.5 * p.xgrid.h / 5.0;
  p.coeffs = CoefficientField::constant(1.0, 0.0, 0.0, 0.0);
  p.initial = [](double, double x, double v) {
    return std::exp(-(x - 0.4) * (x - 0.4) / 0.02 - 0.5 * (v - 1.0) * (v - 1.0));
  };
  return p;
}

double l2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s = std::max(s, std::abs(a[k] - b[k]));
  return s;
}

SolutionField direct(Problem p, boundary::BoundarySpec spec, double t_end) {
  p.spec = std::move(spec);
  Solver s(p, {});
  s.advance(static_cast<int>(std::lround(t_end / p.dt)));
  return s.field();
}

}  // namespace

TEST_CASE("specular iteration with a = 0 stops after the absorbing solve") {
  IterationConfig cfg;
  cfg.a = 0.0;
  auto r = specular_iterate(reference_problem(), 0.5, cfg);
  CHECK(r.trace.converged);
  CHECK(r.trace.iterations == 1);
  CHECK(r.trace.records.at(0).delta == 0.0);
  auto absorbing = direct(reference_problem(), boundary::Inflow{}, 0.5);
  CHECK(max_diff(r.field.f, absorbing.f) == 0.0);
}

TEST_CASE("specular iteration contracts by a^2 per iterate") {
  for (double a : {0.3, 0.5, 0.8}) {
    IterationConfig cfg;
    cfg.a = a;
    // a long horizon, so the defect decays geometrically before the causal
    // structure of the closure takes over
    auto r = specular_iterate(reference_problem(), 4.0, cfg);
    CHECK(r.trace.converged);
    REQUIRE(r.trace.records.size() >= 8);
    for (std::size_t n = 1; n < r.trace.records.size(); ++n) {
      INFO("a = " << a << ", iterate " << n + 1);
      CHECK(r.trace.records[n].delta >= 0.0);
      CHECK(r.trace.records[n].ratio <= a * a * 1.2);
    }
  }
}

TEST_CASE("first specular defect is the damped outgoing energy") {
  // gamma_- f_1 = 0, so delta_1 = a^2 times the outgoing energy of f_1
  IterationConfig cfg;
  cfg.a = 0.5;
  cfg.max_iterations = 1;
  auto p = reference_problem();
  auto r = specular_iterate(p, 0.5, cfg);
  p.spec = boundary::Inflow{};
  SolverConfig sc;
  sc.record_traces = true;
  Solver s(p, sc);
  s.advance(static_cast<int>(std::lround(0.5 / p.dt)));
  double out = 0.0;
  for (const auto& level : s.trace_history())
    for (int w = 0; w < 2; ++w) {
      auto mu = boundary::boundary_measure(p.vgrid, s.field().wall(w));
      for (int j = 0; j < p.vgrid.size(); ++j)
        if (s.field().wall(w).flow(p.vgrid.v[j]) == boundary::Flow::outgoing)
          out += p.dt * mu[j] * level[w][j] * level[w][j];
    }
  CHECK(r.trace.records.at(0).delta == doctest::Approx(0.25 * out).epsilon(1e-13));
}

TEST_CASE("specular fixed point matches the direct damped closure") {
  IterationConfig cfg;
  cfg.a = 0.5;
  auto r = specular_iterate(reference_problem(), 0.5, cfg);
  auto d = direct(reference_problem(), boundary::DampedSpecular{0.5}, 0.5);
  CHECK(max_diff(r.field.f, d.f) < 1e-9);
  CHECK(r.trace.boundary_residual < 1e-8);
}

TEST_CASE("specular iterates approach the a = 1 limit") {
  IterationConfig cfg;
  cfg.tolerance = 1e-16;
  cfg.max_iterations = 5000;
  cfg.a = 0.9;
  auto f9 = specular_iterate(reference_problem(20), 0.5, cfg).field.f;
  cfg.a = 0.99;
  auto f99 = specular_iterate(reference_problem(20), 0.5, cfg).field.f;
  cfg.a = 1.0;
  auto r1 = specular_iterate(reference_problem(20), 0.5, cfg);
  CHECK(r1.trace.scheme == "specular_direct");
  CHECK(l2(f99, r1.field.f) < l2(f9, f99));
  CHECK(l2(f99, r1.field.f) < 0.2 * l2(f9, r1.field.f));
}

TEST_CASE("growing problems raise divergence with the trace attached") {
  auto p = reference_problem(20);
  p.coeffs = CoefficientField::constant(1.0, 0.0, 1.0, 0.0);
  IterationConfig cfg;
  cfg.a = 0.99;
  try {
    specular_iterate(p, 16.0, cfg);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(e.code() == ErrorCode::divergence);
    CHECK(e.trace().records.size() >= 6);
  }
}

TEST_CASE("specular iteration rejects damping outside [0, 1]") {
  IterationConfig cfg;
  cfg.a = 1.5;
  try {
    specular_iterate(reference_problem(), 0.5, cfg);
    FAIL("expected invalid_argument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }
}

TEST_CASE("diffuse slab iteration of the zero problem stays zero") {
  auto p = reference_problem(20);
  p.initial = nullptr;
  p.spec = boundary::Diffuse{[m = boundary::boundary_maxwellian(1.0, 1)](double, double, double v) {
    return m(v);
  }};
  auto r = diffuse_slab_iterate(p, 0.5, {});
  CHECK(r.field.max_abs() == 0.0);
  for (const auto& s : r.trace.slabs) CHECK(s.iterations == 1);
}

TEST_CASE("diffuse slab iteration contracts and reaches the diffuse closure") {
  auto p = reference_problem();
  p.spec = boundary::Diffuse{[m = boundary::boundary_maxwellian(1.0, 1)](double, double, double v) {
    return m(v);
  }};
  IterationConfig cfg;
  auto r = diffuse_slab_iterate(p, 0.5, cfg);
  CHECK(r.trace.converged);
  REQUIRE(!r.trace.slabs.empty());
  for (const auto& s : r.trace.slabs) {
    CHECK(s.contraction <= 0.5);
    CHECK(s.halvings <= 6);
    CHECK(s.records.back().upsilon_change < 1e-8);
  }
  CHECK(r.trace.boundary_residual < 1e-8);
  auto d = direct(reference_problem(), p.spec, 0.5);
  CHECK(max_diff(r.field.f, d.f) < 1e-8);
  CHECK(r.field.t == doctest::Approx(0.5));
}

TEST_CASE("diffuse slab iteration needs a diffuse spec") {
  try {
    diffuse_slab_iterate(reference_problem(), 0.5, {});
    FAIL("expected invalid_argument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_argument);
  }
}

TEST_CASE("iteration trace serialises to JSON") {
  IterationConfig cfg;
  cfg.a = 0.3;
  auto r = specular_iterate(reference_problem(20), 0.5, cfg);
  auto j = nlohmann::json::parse(r.trace.to_json());
  CHECK(j["scheme"] == "damped_specular");
  CHECK(j["records"].size() == r.trace.records.size());
  CHECK(j["converged"] == true);
}

TEST_CASE("trace defect of identical tables is zero") {
  auto g = VelocityGrid::uniform(2.0, 4);
  std::vector<std::vector<std::vector<double>>> t(3, {std::vector<double>(5, 1.0),
                                                      std::vector<double>(5, 2.0)});
  CHECK(trace_defect(t, t, g, 0.1) == 0.0);
}

namespace {

Problem narrow_diffuse_problem() {
  Problem p;
  p.xgrid = SpaceGrid::uniform(0.2, 40);
  p.vgrid = VelocityGrid::uniform(5.0, 40);
  p.dt = 0.5 * p.xgrid.h / 5.0;
  p.coeffs = CoefficientField::constant(1.0, 0.0, 0.0, 0.0);
  p.initial = [](double, double x, double v) {
    return std::exp(-(x - 0.08) * (x - 0.08) / 8e-4 - 0.5 * (v - 1.0) * (v - 1.0));
  };
  p.spec = boundary::Diffuse{[m = boundary::boundary_maxwellian(1.0, 1)](double, double, double v) {
    return m(v);
  }};
  return p;
}

}  // namespace

TEST_CASE("slab length is halved until the slab contracts") {
  IterationConfig cfg;
  cfg.tau = 1.0;
  auto r = diffuse_slab_iterate(narrow_diffuse_problem(), 0.5, cfg);
  REQUIRE(!r.trace.slabs.empty());
  CHECK(r.trace.slabs.back().halvings >= 1);
  CHECK(r.trace.slabs.back().tau < 1.0);
  for (const auto& s : r.trace.slabs) CHECK(s.contraction <= 0.5);
}

TEST_CASE("slab iteration fails once the halvings are used up") {
  IterationConfig cfg;
  cfg.tau = 1.0;
  cfg.max_halvings = 0;
  try {
    diffuse_slab_iterate(narrow_diffuse_problem(), 0.5, cfg);
    FAIL("expected no_convergence");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_convergence);
    CHECK(std::string(e.what()).find("halvings") != std::string::npos);
  }
}
