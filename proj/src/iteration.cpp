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
#include "kfp/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "json.hpp"

namespace kfp::iteration {

namespace {

using Table = std::vector<std::vector<std::vector<double>>>;

int step_count(const Problem& p, double t_end) {
  if (!(p.dt > 0.0)) throw Error(ErrorCode::config_error, "time step must be positive");
  const double span = t_end - p.t0;
  const long n = std::lround(span / p.dt);
  if (!(span > 0.0) || n < 1 || std::abs(n * p.dt - span) > 1e-9 * std::max(1.0, span)) {
    std::ostringstream os;
    os << "horizon " << t_end << " is not a positive multiple of dt = " << p.dt;
    throw Error(ErrorCode::config_error, os.str());
  }
  return static_cast<int>(n);
}

Table zero_table(int levels, int m) {
  return Table(levels, std::vector<std::vector<double>>(2, std::vector<double>(m, 0.0)));
}

// sup over levels of (sum_w sum_j |n v_j| w_j |d|^6)^{1/6}
double trace_defect_lp(const Table& a, const Table& b, const VelocityGrid& g) {
  double sup = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    double s = 0.0;
    for (int w = 0; w < 2; ++w)
      for (int j = 0; j < g.size(); ++j)
        s += std::abs(g.v[j]) * g.w[j] * std::pow(std::abs(a[n][w][j] - b[n][w][j]), 6);
    sup = std::max(sup, std::pow(s, 1.0 / 6.0));
  }
  return sup;
}

double volume_l2(const SolutionField& f, const std::vector<double>& prev) {
  const int m = f.vgrid.size();
  double s = 0.0;
  for (int i = 0; i < f.xgrid.size(); ++i)
    for (int j = 0; j < m; ++j) {
      const double d = f.at(i, j) - (prev.empty() ? 0.0 : prev[static_cast<std::size_t>(i) * m + j]);
      s += f.xgrid.h * f.vgrid.w[j] * d * d;
    }
  return std::sqrt(s);
}

// Outcome of one fixed-point run on [t0, t0 + steps dt].
struct RunResult {
  SolutionField field;
  std::vector<IterationRecord> records;
  bool converged = false;
  double contraction = 0.0;
  double contraction_lp = 0.0;
  bool over_target = false;
};

// Iterates f_n with gamma_- f_n = table_n, table_1 = 0 and
// table_{n+1} = next(history of f_n). Stops on convergence, after
// max_iterations, or (when target > 0) as soon as a contraction factor
// exceeds target.
template <class Next>
RunResult fixed_point(const Problem& base, int steps, const IterationConfig& cfg, double target,
                      const std::string& label, const char* scheme, Next next) {
  const auto& vg = base.vgrid;
  const int m = vg.size();
  Table table = zero_table(steps + 1, m);
  RunResult out;
  std::vector<double> prev_f;
  std::vector<std::array<double, 2>> prev_ups;
  double delta_first = 0.0, delta_prev = 0.0, lp_prev = 0.0;
  int rising = 0;
  SolverConfig sc = cfg.solver;
  sc.record_traces = true;
  for (int n = 1; n <= cfg.max_iterations; ++n) {
    Problem p = base;
    p.spec = boundary::TabulatedInflow{std::make_shared<const Table>(table)};
    Solver solver(std::move(p), sc);
    solver.advance(steps);
    std::vector<std::array<double, 2>> ups;
    Table fresh = next(solver, ups);

    IterationRecord rec;
    rec.iteration = n;
    rec.delta = trace_defect(fresh, table, vg, base.dt);
    rec.delta_lp = trace_defect_lp(fresh, table, vg);
    rec.volume = volume_l2(solver.field(), prev_f);
    rec.ratio = n > 1 && delta_prev > 0.0 ? rec.delta / delta_prev : 0.0;
    for (std::size_t k = 0; k < ups.size() && k < prev_ups.size(); ++k)
      for (int w = 0; w < 2; ++w)
        rec.upsilon_change = std::max(rec.upsilon_change, std::abs(ups[k][w] - prev_ups[k][w]));
    if (prev_ups.empty())
      for (const auto& u : ups)
        rec.upsilon_change = std::max({rec.upsilon_change, std::abs(u[0]), std::abs(u[1])});
    if (n > 1 && delta_prev > 0.0) {
      out.contraction = std::max(out.contraction, std::sqrt(rec.ratio));
      if (lp_prev > 0.0) out.contraction_lp = std::max(out.contraction_lp, rec.delta_lp / lp_prev);
    }
    out.records.push_back(rec);
    out.field = solver.field();

    if (n == 1) delta_first = rec.delta;
    const bool done = rec.delta <= cfg.tolerance * delta_first;
    if (done) {
      out.converged = true;
      break;
    }
    if (target > 0.0 && out.contraction > target) {
      out.over_target = true;
      break;
    }
    rising = n > 1 && rec.delta >= delta_prev ? rising + 1 : 0;
    if (rising >= cfg.divergence_window) {
      IterationTrace trace;
      trace.scheme = scheme;
      trace.a = cfg.a;
      trace.iterations = n;
      trace.records = out.records;
      std::ostringstream os;
      os << label << ": defect did not decrease over " << rising << " iterations (delta = "
         << rec.delta << ")";
      throw DivergenceError(os.str(), std::move(trace));
    }
    delta_prev = rec.delta;
    lp_prev = rec.delta_lp;
    prev_f = solver.field().f;
    prev_ups = std::move(ups);
    table = std::move(fresh);
  }
  return out;
}

}  // namespace

double trace_defect(const Table& a, const Table& b, const VelocityGrid& grid, double dt) {
  if (a.size() != b.size())
    throw Error(ErrorCode::invalid_argument, "trace tables cover different time levels");
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n)
    for (int w = 0; w < 2; ++w)
      for (int j = 0; j < grid.size(); ++j) {
        const double d = a[n][w][j] - b[n][w][j];
        s += dt * std::abs(grid.v[j]) * grid.w[j] * d * d;
      }
  return s;
}

IterationResult specular_iterate(const Problem& problem, double t_end,
                                 const IterationConfig& cfg) {
  const double a = cfg.a;
  if (!(a >= 0.0 && a <= 1.0))
    throw Error(ErrorCode::invalid_argument, "damping a must lie in [0, 1]");
  const int steps = step_count(problem, t_end);
  IterationResult res;
  res.trace.a = a;
  if (a == 1.0) {
    Problem p = problem;
    p.spec = boundary::Specular{};
    Solver s(std::move(p), cfg.solver);
    s.advance(steps);
    res.field = s.field();
    res.trace.scheme = "specular_direct";
    res.trace.converged = true;
    return res;
  }
  const auto& vg = problem.vgrid;
  const int m = vg.size();
  auto reflect = [&](const Solver& s, std::vector<std::array<double, 2>>&) {
    const auto& hist = s.trace_history();
    Table t = zero_table(static_cast<int>(hist.size()), m);
    for (std::size_t k = 0; k < hist.size(); ++k)
      for (int w = 0; w < 2; ++w) {
        const auto wall = s.field().wall(w);
        for (int j = 0; j < m; ++j)
          if (wall.flow(vg.v[j]) == boundary::Flow::incoming)
            t[k][w][j] = a * hist[k][w][vg.mirror(j)];
      }
    return t;
  };
  auto run = fixed_point(problem, steps, cfg, 0.0, "damped specular iteration",
                         "damped_specular", reflect);
  res.field = std::move(run.field);
  res.trace.scheme = "damped_specular";
  res.trace.converged = run.converged;
  res.trace.iterations = static_cast<int>(run.records.size());
  res.trace.boundary_residual = std::sqrt(run.records.back().delta);
  res.trace.records = std::move(run.records);
  return res;
}

IterationResult diffuse_slab_iterate(const Problem& problem, double t_end,
                                     const IterationConfig& cfg) {
  if (!std::holds_alternative<boundary::Diffuse>(problem.spec))
    throw Error(ErrorCode::invalid_argument, "the slab iteration needs a diffuse boundary spec");
  boundary::validate(problem.spec);
  if (!(cfg.tau > 0.0 && cfg.tau <= 1.0))
    throw Error(ErrorCode::invalid_argument, "slab length tau must lie in (0, 1]");
  const int total = step_count(problem, t_end);
  const auto& vg = problem.vgrid;
  const int m = vg.size();

  IterationResult res;
  res.trace.scheme = "diffuse_slab";
  res.trace.converged = true;
  double tau = cfg.tau, residual2 = 0.0;
  int done = 0, halvings = 0;
  Problem slab = problem;
  while (done < total) {
    const int steps = std::min(total - done, std::max(1, static_cast<int>(std::lround(tau / problem.dt))));
    auto closure = [&](const Solver& s, std::vector<std::array<double, 2>>& ups) {
      const auto& hist = s.trace_history();
      Table t = zero_table(static_cast<int>(hist.size()), m);
      ups.assign(hist.size(), {0.0, 0.0});
      for (std::size_t k = 0; k < hist.size(); ++k)
        for (int w = 0; w < 2; ++w) {
          const auto wall = s.field().wall(w);
          std::vector<double> outgoing(m, 0.0);
          for (int j = 0; j < m; ++j)
            if (wall.flow(vg.v[j]) == boundary::Flow::outgoing) outgoing[j] = hist[k][w][j];
          ups[k][w] = boundary::macroscopic_flux(outgoing, vg, wall);
          t[k][w] = boundary::apply_boundary(problem.spec, outgoing, vg, wall,
                                             slab.t0 + static_cast<double>(k) * problem.dt,
                                             static_cast<int>(k));
        }
      return t;
    };
    std::ostringstream label;
    label << "diffuse slab " << res.trace.slabs.size() << " at t=" << slab.t0;
    auto run = fixed_point(slab, steps, cfg, cfg.contraction_target, label.str(), "diffuse_slab",
                           closure);
    if (run.over_target || !run.converged) {
      if (steps == 1 || halvings >= cfg.max_halvings) {
        std::ostringstream os;
        os << label.str() << ": contraction " << run.contraction << " (L6 " << run.contraction_lp
           << ") above " << cfg.contraction_target << " after " << halvings
           << " halvings, tau = " << tau;
        throw Error(ErrorCode::no_convergence, os.str());
      }
      tau *= 0.5;
      ++halvings;
      continue;
    }
    SlabRecord rec;
    rec.index = static_cast<int>(res.trace.slabs.size());
    rec.t_start = slab.t0;
    rec.tau = steps * problem.dt;
    rec.halvings = halvings;
    rec.iterations = static_cast<int>(run.records.size());
    rec.contraction = run.contraction;
    rec.contraction_lp = run.contraction_lp;
    rec.boundary_residual = std::sqrt(run.records.back().delta);
    residual2 += run.records.back().delta;
    rec.records = std::move(run.records);
    res.trace.iterations += rec.iterations;
    res.trace.slabs.push_back(std::move(rec));

    done += steps;
    slab.t0 = run.field.t;
    slab.initial = nullptr;
    slab.initial_values = run.field.f;
    res.field = std::move(run.field);
  }
  // the field's step counter and time refer to the whole horizon
  res.field.step = total;
  res.trace.boundary_residual = std::sqrt(residual2);
  return res;
}

std::string IterationTrace::to_json() const {
  auto record = [](const IterationRecord& r) {
    return nlohmann::json{{"iteration", r.iteration},
                          {"delta", r.delta},
                          {"volume", r.volume},
                          {"ratio", r.ratio},
                          {"delta_l6", r.delta_lp},
                          {"upsilon_change", r.upsilon_change}};
  };
  nlohmann::json j;
  j["scheme"] = scheme;
  j["a"] = a;
  j["converged"] = converged;
  j["iterations"] = iterations;
  j["boundary_residual"] = boundary_residual;
  j["records"] = nlohmann::json::array();
  for (const auto& r : records) j["records"].push_back(record(r));
  j["slabs"] = nlohmann::json::array();
  for (const auto& s : slabs) {
    nlohmann::json js{{"index", s.index},
                      {"t_start", s.t_start},
                      {"tau", s.tau},
                      {"halvings", s.halvings},
                      {"iterations", s.iterations},
                      {"contraction", s.contraction},
                      {"contraction_l6", s.contraction_lp},
                      {"boundary_residual", s.boundary_residual},
                      {"records", nlohmann::json::array()}};
    for (const auto& r : s.records) js["records"].push_back(record(r));
    j["slabs"].push_back(std::move(js));
  }
  return j.dump();
}

}  // namespace kfp::iteration
