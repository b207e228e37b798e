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
#include "kfp/kfp.h"

#include <cmath>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "kfp/analytic.hpp"
#include "kfp/config.hpp"
#include "kfp/diagnostics.hpp"
#include "kfp/error.hpp"
#include "kfp/io.hpp"
#include "kfp/pipeline.hpp"
#include "kfp/solver.hpp"
#include "kfp/verification.hpp"

struct kfp_report {
  kfp::diagnostics::DiagnosticsReport report;
  std::string json;
  std::string failure;
  bool has_failure = false;
};

struct kfp_solver {
  kfp::Solver solver;
};

namespace {

thread_local std::string g_last_error;

kfp_status fail(kfp_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Runs body and maps exceptions onto status codes.
template <class F>
kfp_status guarded(F&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const kfp::Error& e) {
    return fail(static_cast<kfp_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(KFP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(KFP_ERR_INTERNAL, e.what());
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw kfp::Error(kfp::ErrorCode::invalid_argument, what);
}

kfp_report* wrap(kfp::diagnostics::DiagnosticsReport report) {
  auto r = std::make_unique<kfp_report>();
  r->report = std::move(report);
  r->json = r->report.to_json();
  return r.release();
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<double> axis(double lo, double hi, int n, bool log, const char* name) {
  std::string what = std::string(name) + " range is empty or not finite";
  require(std::isfinite(lo) && std::isfinite(hi) && n >= 1 && lo <= hi, what.c_str());
  require(n > 1 || lo == hi, (std::string(name) + " range needs two points or equal ends").c_str());
  if (log) require(lo > 0.0, (std::string(name) + " logarithmic range needs positive ends").c_str());
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) {
    if (n == 1) {
      out[k] = lo;
    } else if (log) {
      const double s = double(k) / (n - 1);
      out[k] = std::exp(std::log(lo) + s * (std::log(hi) - std::log(lo)));
    } else {
      out[k] = (lo * (n - 1 - k) + hi * k) / (n - 1);
    }
  }
  if (n > 1) out.front() = lo, out.back() = hi;
  return out;
}

}  // namespace

extern "C" {

const char* kfp_version(void) { return KFP_VERSION; }

const char* kfp_last_error(void) { return g_last_error.c_str(); }

const char* kfp_status_name(kfp_status status) {
  if (status == KFP_OK) return "ok";
  if (status == KFP_ERR_INTERNAL) return "internal";
  if (status >= KFP_ERR_INVALID_ARGUMENT && status <= KFP_ERR_CHECK_FAILED)
    return kfp::to_string(static_cast<kfp::ErrorCode>(status));
  return "unknown";
}

void kfp_string_free(char* text) { std::free(text); }

kfp_status kfp_run(const char* config_path, const char* out_dir, int64_t seed, int threads,
                   kfp_report** out) {
  return guarded([&] {
    require(config_path && out_dir && out, "kfp_run: null argument");
    *out = nullptr;
    auto cfg = kfp::config::load_run_config(config_path);
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (threads > 0) cfg.threads = threads;
    auto outcome = kfp::pipeline::run_config(cfg, out_dir);
    auto* r = wrap(std::move(outcome.report));
    r->has_failure = outcome.runtime_failure;
    r->failure = outcome.failure;
    *out = r;
    return KFP_OK;
  });
}

kfp_status kfp_verify(const char* suite, uint64_t seed, int threads, kfp_progress_fn progress,
                      void* user, kfp_report** out) {
  return guarded([&] {
    require(suite && out, "kfp_verify: null argument");
    *out = nullptr;
    kfp::verification::VerifyOptions o;
    o.seed = seed;
    o.threads = threads > 0 ? threads : 1;
    std::vector<kfp::diagnostics::CheckResult> checks;
    for (int id : kfp::verification::suite(suite)) {
      auto r = kfp::verification::run_criterion(id, o);
      if (progress) progress(id, r.title.c_str(), r.passed ? 1 : 0, r.seconds, user);
      for (auto c : r.checks) {
        c.name = "criterion " + std::to_string(id) + ": " + c.name;
        checks.push_back(std::move(c));
      }
    }
    *out = wrap(kfp::diagnostics::verdict(std::move(checks),
                                          {{"seed", double(o.seed)}, {"threads", double(o.threads)}}));
    return KFP_OK;
  });
}

int kfp_report_passed(const kfp_report* report) { return report && report->report.passed ? 1 : 0; }

size_t kfp_report_check_count(const kfp_report* report) {
  return report ? report->report.checks.size() : 0;
}

kfp_status kfp_report_check(const kfp_report* report, size_t index, const char** name, int* passed,
                            double* measured, double* tolerance, const char** detail) {
  return guarded([&] {
    require(report != nullptr, "kfp_report_check: null report");
    if (index >= report->report.checks.size())
      throw kfp::Error(kfp::ErrorCode::invalid_argument, "check index out of range");
    const auto& c = report->report.checks[index];
    if (name) *name = c.name.c_str();
    if (passed) *passed = c.passed ? 1 : 0;
    if (measured) *measured = c.measured;
    if (tolerance) *tolerance = c.tolerance;
    if (detail) *detail = c.detail.c_str();
    return KFP_OK;
  });
}

const char* kfp_report_json(const kfp_report* report) { return report ? report->json.c_str() : ""; }

const char* kfp_report_failure(const kfp_report* report) {
  return report && report->has_failure ? report->failure.c_str() : nullptr;
}

void kfp_report_free(kfp_report* report) { delete report; }

kfp_status kfp_kummer_m(double a, double b, double tau, double* out) {
  return guarded([&] {
    require(out != nullptr, "kfp_kummer_m: null output");
    *out = kfp::analytic::kummer_m(a, b, tau);
    return KFP_OK;
  });
}

kfp_status kfp_tricomi_psi(double tau, double* out) {
  return guarded([&] {
    require(out != nullptr, "kfp_tricomi_psi: null output");
    *out = kfp::analytic::tricomi_psi(tau);
    return KFP_OK;
  });
}

kfp_status kfp_steady(double x, double v, double* out) {
  return guarded([&] {
    require(out != nullptr, "kfp_steady: null output");
    *out = kfp::analytic::steady_solution(x, v).f;
    return KFP_OK;
  });
}

kfp_status kfp_tabulate_special(const kfp_table_spec* spec, char** csv) {
  return guarded([&] {
    require(spec && csv, "kfp_tabulate_special: null argument");
    *csv = nullptr;
    using kfp::io::format_double;
    std::ostringstream key, body;
    key << "table " << spec->kind << ' ' << format_double(spec->first_min) << ' '
        << format_double(spec->first_max) << ' ' << spec->first_points << ' ' << spec->first_log;
    if (spec->kind == KFP_TABLE_PSI) {
      for (double t : axis(spec->first_min, spec->first_max, spec->first_points, spec->first_log, "tau"))
        body << format_double(t) << ',' << format_double(kfp::analytic::tricomi_psi(t)) << ','
             << format_double(kfp::analytic::kummer_m(-1.0 / 6, 2.0 / 3, t)) << ','
             << format_double(kfp::analytic::kummer_m(1.0 / 6, 4.0 / 3, t)) << '\n';
    } else if (spec->kind == KFP_TABLE_STEADY) {
      key << ' ' << format_double(spec->v_min) << ' ' << format_double(spec->v_max) << ' '
          << spec->v_points;
      auto xs = axis(spec->first_min, spec->first_max, spec->first_points, spec->first_log, "x");
      auto vs = axis(spec->v_min, spec->v_max, spec->v_points, false, "v");
      if (xs.front() <= 0.0)
        throw kfp::Error(kfp::ErrorCode::domain_error, "steady table needs x > 0");
      for (double x : xs)
        for (double v : vs)
          body << format_double(x) << ',' << format_double(v) << ','
               << format_double(kfp::analytic::steady_solution(x, v).f) << '\n';
    } else {
      throw kfp::Error(kfp::ErrorCode::invalid_argument, "unknown table kind");
    }
    std::string text = "# kfp " KFP_VERSION " config " + kfp::io::fnv1a_hex(key.str()) + "\n";
    text += spec->kind == KFP_TABLE_PSI ? "tau,psi,m1,m2\n" : "x,v,f\n";
    text += body.str();
    *csv = copy_string(text);
    return KFP_OK;
  });
}

kfp_status kfp_holder_probe(const char* csv_path, double alpha, kfp_metric metric,
                            uint64_t random_pairs, uint64_t seed, double* seminorm) {
  return guarded([&] {
    require(csv_path && seminorm, "kfp_holder_probe: null argument");
    require(metric == KFP_METRIC_KINETIC || metric == KFP_METRIC_EUCLIDEAN, "unknown metric");
    auto field = kfp::io::read_field_csv(csv_path);
    kfp::diagnostics::HolderOptions o;
    o.metric = metric == KFP_METRIC_KINETIC ? kfp::diagnostics::Metric::kinetic
                                            : kfp::diagnostics::Metric::euclidean;
    o.random_pairs = random_pairs;
    o.seed = seed;
    *seminorm = kfp::diagnostics::holder_seminorm(field, alpha, {}, o).seminorm;
    return KFP_OK;
  });
}

kfp_status kfp_solver_create(const char* config_text, kfp_solver** out) {
  return guarded([&] {
    require(config_text && out, "kfp_solver_create: null argument");
    *out = nullptr;
    auto cfg = kfp::config::parse_run_config(config_text, "<memory>");
    kfp::SolverConfig sc = cfg.scheme;
    sc.threads = cfg.threads;
    *out = new kfp_solver{kfp::Solver(kfp::config::make_problem(cfg), sc)};
    return KFP_OK;
  });
}

kfp_status kfp_solver_step(kfp_solver* solver, int steps) {
  return guarded([&] {
    require(solver != nullptr, "kfp_solver_step: null solver");
    require(steps >= 0, "kfp_solver_step: negative step count");
    solver->solver.advance(steps);
    return KFP_OK;
  });
}

kfp_status kfp_solver_time(const kfp_solver* solver, double* t) {
  return guarded([&] {
    require(solver && t, "kfp_solver_time: null argument");
    *t = solver->solver.field().t;
    return KFP_OK;
  });
}

kfp_status kfp_solver_mass(const kfp_solver* solver, double* mass) {
  return guarded([&] {
    require(solver && mass, "kfp_solver_mass: null argument");
    *mass = solver->solver.field().mass();
    return KFP_OK;
  });
}

kfp_status kfp_solver_shape(const kfp_solver* solver, int* nx, int* nodes) {
  return guarded([&] {
    require(solver && nx && nodes, "kfp_solver_shape: null argument");
    *nx = solver->solver.field().xgrid.size();
    *nodes = solver->solver.field().vgrid.size();
    return KFP_OK;
  });
}

kfp_status kfp_solver_field(const kfp_solver* solver, double* buffer, size_t count) {
  return guarded([&] {
    require(solver && buffer, "kfp_solver_field: null argument");
    const auto& f = solver->solver.field().f;
    if (count < f.size())
      throw kfp::Error(kfp::ErrorCode::invalid_argument,
                       "buffer holds " + std::to_string(count) + " values, field needs " +
                           std::to_string(f.size()));
    std::copy(f.begin(), f.end(), buffer);
    return KFP_OK;
  });
}

void kfp_solver_free(kfp_solver* solver) { delete solver; }

}  // extern "C"
