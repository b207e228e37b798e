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
#include "kfp/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <optional>

#include "json.hpp"
#include "kfp/analytic.hpp"
#include "kfp/error.hpp"
#include "kfp/io.hpp"
#include "kfp/iteration.hpp"
#include "kfp/solver.hpp"
#include "kfp/verification.hpp"

namespace kfp::pipeline {
namespace {

using diagnostics::CheckResult;
using nlohmann::json;

CheckResult below(std::string name, double measured, double tolerance, std::string detail = {}) {
  return {std::move(name), std::isfinite(measured) && measured <= tolerance, measured, tolerance,
          std::move(detail)};
}

std::string step_name(int step) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "fields/field_%06d.csv", step);
  return buf;
}

class Run {
 public:
  Run(const config::RunConfig& cfg, std::string out_dir)
      : cfg_(cfg), dir_(std::move(out_dir)), stamp_{KFP_VERSION, cfg.hash} {}

  RunOutcome execute();

 private:
  void write(const std::string& name, const std::string& text) {
    io::write_file(dir_ + "/" + name, text);
    out_.files.push_back(name);
  }
  void dump(const SolutionField& f, const std::string& name) {
    if (cfg_.output.fields) write(name, io::field_csv(f, stamp_));
  }
  void march(Solver& s, bool to_steady);
  void iterate();
  void diagnose();
  void compatibility_warnings();
  void finish_report();

  const config::RunConfig& cfg_;
  std::string dir_;
  io::Stamp stamp_;
  RunOutcome out_;
  Problem problem_;
  std::optional<SolutionField> final_;
  double mass0_ = 0.0;
  double max_excess_ = -INFINITY;
  std::vector<LedgerEntry> ledger_;
  std::vector<CheckResult> checks_;
  std::vector<std::pair<std::string, double>> params_;
  std::vector<std::pair<std::string, std::string>> sections_;
  json warnings_ = json::array();
};

void Run::march(Solver& s, bool to_steady) {
  const int steps = config::step_count(cfg_);
  const bool want_ledger = cfg_.diagnostics.ledger || cfg_.output.ledger;
  const double tol = cfg_.pipeline.steady_tolerance;
  bool steady = false;
  int n = 0;
  for (; n < steps && !steady; ++n) {
    SolutionField before = s.field();
    s.step();
    const auto& after = s.field();
    max_excess_ = std::max(max_excess_, diagnostics::max_principle_excess(after));
    if (want_ledger) ledger_.push_back(energy_ledger(before, after, problem_.coeffs, cfg_.diagnostics.ledger_q));
    if (cfg_.output.every > 0 && after.step % cfg_.output.every == 0 && n + 1 < steps)
      dump(after, step_name(after.step));
    if (to_steady) {
      double change = 0.0;
      for (std::size_t k = 0; k < after.f.size(); ++k)
        change = std::max(change, std::abs(after.f[k] - before.f[k]));
      steady = change / problem_.dt <= tol * std::max(1.0, after.max_abs());
    }
  }
  if (to_steady)
    checks_.push_back({"steady state reached", steady, s.field().t, cfg_.grid.T,
                       steady ? "stationary before the final time" : "final time reached first"});
  final_ = s.field();
}

void Run::iterate() {
  auto icfg = config::make_iteration_config(cfg_);
  iteration::IterationResult r;
  try {
    r = cfg_.pipeline.mode == "diffuse_slab"
            ? iteration::diffuse_slab_iterate(problem_, cfg_.grid.T, icfg)
            : iteration::specular_iterate(problem_, cfg_.grid.T, icfg);
  } catch (const iteration::DivergenceError& e) {
    sections_.push_back({"iteration", e.trace().to_json()});
    throw;
  }
  sections_.push_back({"iteration", r.trace.to_json()});
  checks_.push_back({"iteration converged", r.trace.converged, double(r.trace.iterations), 0.0,
                     std::to_string(r.trace.iterations) + " iterations"});
  params_.push_back({"boundary_residual", r.trace.boundary_residual});
  max_excess_ = diagnostics::max_principle_excess(r.field);
  final_ = std::move(r.field);
}

void Run::compatibility_warnings() {
  // discrete compatibility of initial and boundary data on incoming wall nodes
  const auto& b = cfg_.boundary;
  if (b.type != "inflow" && b.type != "specular" && b.type != "damped_specular") return;
  const double X = cfg_.grid.X, t0 = 0.0;
  double gap = 0.0;
  for (double v : problem_.vgrid.v)
    for (int w = 0; w < 2; ++w) {
      const double x = w == 0 ? 0.0 : X;
      const bool incoming = w == 0 ? v > 0.0 : v < 0.0;
      if (!incoming) continue;
      const double f = cfg_.initial ? cfg_.initial(t0, x, v) : 0.0;
      double want = 0.0;
      if (b.type == "inflow") {
        want = b.g_tabulated ? b.g_tabulated(t0, x, v) : b.g ? b.g(t0, x, v) : 0.0;
      } else {
        const double a = b.type == "specular" ? 1.0 : b.a;
        want = a * (cfg_.initial ? cfg_.initial(t0, x, -v) : 0.0);
      }
      gap = std::max(gap, std::abs(f - want));
    }
  params_.push_back({"compatibility_gap", gap});
  if (gap > 1e-8)
    warnings_.push_back("initial data violate the boundary condition on incoming nodes (max gap " +
                        io::format_double(gap) + "); Hoelder bounds near the wall may not apply");
}

void Run::diagnose() {
  const auto& d = cfg_.diagnostics;
  const auto& f = *final_;
  const double T = f.t - problem_.t0;
  params_.push_back({"final_time", f.t});
  params_.push_back({"mass_initial", mass0_});
  params_.push_back({"mass_final", f.mass()});
  if (d.mass) {
    const double drift = mass0_ != 0.0 ? std::abs(f.mass() - mass0_) / std::abs(mass0_) / T
                                       : std::abs(f.mass()) / T;
    checks_.push_back(below("mass drift per unit time", drift, d.mass_tolerance));
  }
  if (d.ledger && !ledger_.empty()) {
    double worst = 0.0, sum = 0.0;
    for (const auto& e : ledger_) {
      worst = std::max(worst, std::abs(e.residual));
      sum += std::abs(e.residual);
    }
    params_.push_back({"ledger_max_residual", worst});
    params_.push_back({"ledger_residual_sum", sum});
    if (d.ledger_tolerance > 0.0)
      checks_.push_back(below("energy ledger residual", worst, d.ledger_tolerance));
  }
  if (d.max_principle)
    checks_.push_back(below("maximum principle excess", max_excess_, 1e-8));
  if (d.compare_steady) {
    double e = 0.0, n = 0.0;
    for (int i = 0; i < f.xgrid.size(); ++i)
      for (int j = 0; j < f.vgrid.size(); ++j) {
        const double ex = analytic::steady_solution(f.xgrid.x[i], f.vgrid.v[j]).f;
        e += f.vgrid.w[j] * (f.at(i, j) - ex) * (f.at(i, j) - ex);
        n += f.vgrid.w[j] * ex * ex;
      }
    checks_.push_back(below("relative L2 error against the steady solution", std::sqrt(e / n),
                            d.steady_error_tolerance));
  }
  if (d.boundary_exponents) {
    auto b = diagnostics::fit_boundary_exponents();
    checks_.push_back(below("alpha_x deviation from 1/6", std::abs(b.alpha_x.slope - 1.0 / 6), 1e-3,
                            "alpha_x = " + io::format_double(b.alpha_x.slope)));
    checks_.push_back(below("alpha_v deviation from 1/2", std::abs(b.alpha_v.slope - 0.5), 0.02,
                            "alpha_v = " + io::format_double(b.alpha_v.slope)));
    json fits = {{"alpha_x", b.alpha_x.slope},
                 {"alpha_x_half_width", b.alpha_x.half_width},
                 {"alpha_v", b.alpha_v.slope},
                 {"alpha_v_half_width", b.alpha_v.half_width},
                 {"alpha_v_fixed_x", b.alpha_v_literal.slope},
                 {"flagged", b.flagged}};
    sections_.push_back({"boundary_exponents", fits.dump()});
  }
  if (d.steady_residual) {
    auto r = verification::steady_residual_probe(200);
    checks_.push_back(below("steady solution relative residual", r.max_relative, 1e-6));
  }
  if (d.holder.enabled) {
    compatibility_warnings();
    diagnostics::HolderOptions o;
    o.metric = d.holder.metric;
    o.random_pairs = d.holder.random_pairs;
    o.seed = cfg_.seed;
    auto h = diagnostics::holder_seminorm(diagnostics::GriddedField::from_solution(f), d.holder.alpha, {}, o);
    params_.push_back({"holder_seminorm", h.seminorm});
    if (d.holder.limit > 0.0)
      checks_.push_back(below("Hoelder seminorm", h.seminorm, d.holder.limit));
  }
  if (d.oscillation.enabled) {
    PhasePoint z0{f.t, {d.oscillation.x0}, {d.oscillation.v0}};
    auto p = diagnostics::oscillation_decay(diagnostics::GriddedField::from_solution(f), z0,
                                            d.oscillation.ladder);
    write("oscillation.csv", io::profile_csv(p, stamp_));
    checks_.push_back({"oscillation decay slope", p.slope > d.oscillation.min_slope, p.slope,
                       d.oscillation.min_slope, std::to_string(p.usable) + " usable cylinders"});
  }
}

void Run::finish_report() {
  if (checks_.empty()) checks_.push_back({"run completed", true, 0.0, 0.0, "no checks enabled"});
  params_.push_back({"seed", double(cfg_.seed)});
  params_.push_back({"nx", double(cfg_.grid.nx)});
  params_.push_back({"nv", double(cfg_.grid.nv)});
  params_.push_back({"dt", problem_.dt});
  auto report = diagnostics::verdict(checks_, params_, cfg_.hash);
  report.sections = sections_;
  report.sections.push_back({"mode", json(cfg_.pipeline.mode).dump()});
  if (!warnings_.empty()) report.sections.push_back({"warnings", warnings_.dump()});
  out_.report = std::move(report);
}

RunOutcome Run::execute() {
  try {
    problem_ = config::make_problem(cfg_);
    const auto& mode = cfg_.pipeline.mode;
    {
      SolverConfig sc = cfg_.scheme;
      sc.threads = cfg_.threads;
      Solver s(problem_, sc);
      mass0_ = s.field().mass();
      max_excess_ = diagnostics::max_principle_excess(s.field());
      if (mode == "march" || mode == "steady") {
        if (cfg_.output.every > 0) dump(s.field(), step_name(0));
        march(s, mode == "steady");
      }
    }
    if (mode == "specular_iteration" || mode == "diffuse_slab") iterate();
    dump(*final_, "fields/field_final.csv");
    diagnose();
  } catch (const Error& e) {
    out_.runtime_failure = true;
    out_.failure = std::string(to_string(e.code())) + ": " + e.what();
  } catch (const std::exception& e) {
    out_.runtime_failure = true;
    out_.failure = e.what();
  }
  if (!ledger_.empty() && cfg_.output.ledger) write("ledger.jsonl", io::ledger_jsonl(ledger_, stamp_));
  if (out_.runtime_failure) {
    checks_.push_back({"run completed", false, 0.0, 0.0, out_.failure});
    json rec = {{"status", "failure"},
                {"error", out_.failure},
                {"version", stamp_.version},
                {"config_hash", stamp_.config_hash}};
    write("failure.json", rec.dump(2) + "\n");
  }
  finish_report();
  write("report.json", out_.report.to_json() + "\n");
  return std::move(out_);
}

}  // namespace

RunOutcome run_config(const config::RunConfig& cfg, const std::string& out_dir) {
  return Run(cfg, out_dir).execute();
}

}  // namespace kfp::pipeline
