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
// kfp command line front end. Links only the C interface.
//
// Exit codes: 0 pass, 1 runtime or check failure, 2 usage or config error.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "kfp/kfp.h"

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

int error_exit(kfp_status status) {
  std::cerr << "kfp: " << kfp_status_name(status) << ": " << kfp_last_error() << "\n";
  switch (status) {
    case KFP_ERR_CONFIG:
    case KFP_ERR_INVALID_ARGUMENT:
    case KFP_ERR_DOMAIN:
    case KFP_ERR_IO:
      return kUsage;
    default:
      return kFail;
  }
}

void print_checks(const kfp_report* r) {
  for (std::size_t k = 0; k < kfp_report_check_count(r); ++k) {
    const char *name = nullptr, *detail = nullptr;
    int passed = 0;
    double measured = 0.0, tol = 0.0;
    kfp_report_check(r, k, &name, &passed, &measured, &tol, &detail);
    std::printf("  %s %s: %.6g (limit %.6g)%s%s\n", passed ? "ok  " : "FAIL", name, measured, tol,
                *detail ? "  " : "", detail);
  }
}

bool save(const std::string& path, const std::string& text) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

struct RunArgs {
  std::string config, out_dir = "kfp_out";
  std::int64_t seed = -1;
  int threads = 0;
};

int cmd_run(const RunArgs& a) {
  kfp_report* r = nullptr;
  if (auto s = kfp_run(a.config.c_str(), a.out_dir.c_str(), a.seed, a.threads, &r); s != KFP_OK)
    return error_exit(s);
  print_checks(r);
  const char* failure = kfp_report_failure(r);
  if (failure) std::fprintf(stderr, "kfp: run stopped: %s\n", failure);
  const bool passed = kfp_report_passed(r);
  std::printf("%s  (artifacts in %s)\n", passed ? "PASS" : "FAIL", a.out_dir.c_str());
  kfp_report_free(r);
  return passed ? kPass : kFail;
}

struct VerifyArgs {
  std::string suite = "all", out_dir;
  std::uint64_t seed = 20240601;
  int threads = 1;
};

int cmd_verify(const VerifyArgs& a) {
  kfp_report* r = nullptr;
  auto progress = [](int id, const char* title, int passed, double seconds, void*) {
    std::printf("criterion %2d %s  %s (%.2f s)\n", id, passed ? "PASS" : "FAIL", title, seconds);
    std::fflush(stdout);
  };
  if (auto s = kfp_verify(a.suite.c_str(), a.seed, a.threads, progress, nullptr, &r); s != KFP_OK)
    return error_exit(s);
  const bool passed = kfp_report_passed(r);
  if (!passed) print_checks(r);
  if (!a.out_dir.empty() && !save(a.out_dir + "/verify_" + a.suite + ".json", std::string(kfp_report_json(r)) + "\n")) {
    std::cerr << "kfp: cannot write to " << a.out_dir << "\n";
    kfp_report_free(r);
    return kFail;
  }
  std::printf("suite %s: %s\n", a.suite.c_str(), passed ? "PASS" : "FAIL");
  kfp_report_free(r);
  return passed ? kPass : kFail;
}

struct TableArgs {
  std::string table = "psi", output;
  double min = -10.0, max = 10.0;
  int points = 101;
  bool log = false;
  double v_min = 0.0, v_max = 0.0;
  int v_points = 1;
};

int cmd_tabulate(const TableArgs& a) {
  kfp_table_spec spec{a.table == "psi" ? KFP_TABLE_PSI : KFP_TABLE_STEADY,
                      a.min, a.max, a.points, a.log ? 1 : 0, a.v_min, a.v_max, a.v_points};
  char* csv = nullptr;
  if (auto s = kfp_tabulate_special(&spec, &csv); s != KFP_OK) return error_exit(s);
  std::string text(csv);
  kfp_string_free(csv);
  if (a.output.empty()) {
    std::cout << text;
  } else if (!save(a.output, text)) {
    std::cerr << "kfp: cannot write " << a.output << "\n";
    return kFail;
  }
  return kPass;
}

struct HolderArgs {
  std::string field, metric = "kinetic";
  double alpha = 0.5, limit = 0.0;
  std::uint64_t pairs = 100000, seed = 20240601;
};

int cmd_holder(const HolderArgs& a) {
  double semi = 0.0;
  const auto metric = a.metric == "kinetic" ? KFP_METRIC_KINETIC : KFP_METRIC_EUCLIDEAN;
  if (auto s = kfp_holder_probe(a.field.c_str(), a.alpha, metric, a.pairs, a.seed, &semi); s != KFP_OK)
    return error_exit(s);
  std::printf("alpha %.6g metric %s seminorm %.17g\n", a.alpha, a.metric.c_str(), semi);
  if (a.limit > 0.0 && !(semi <= a.limit)) {
    std::printf("FAIL: seminorm exceeds %.6g\n", a.limit);
    return kFail;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string("kinetic Fokker-Planck simulator and verification suite, version ") + kfp_version()};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kfp_version()));

  RunArgs run;
  auto* r = app.add_subcommand("run", "execute a run config and write its artifacts");
  r->add_option("--config", run.config, "run config file")->required();
  r->add_option("--out-dir", run.out_dir, "artifact directory")->capture_default_str();
  r->add_option("--seed", run.seed, "override the config seed")->check(CLI::NonNegativeNumber);
  r->add_option("--threads", run.threads, "override the config thread count")->check(CLI::PositiveNumber);

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "run an acceptance suite");
  v->add_option("--suite", ver.suite, "all, analytic, solver, iteration, geometry or viscosity")
      ->capture_default_str();
  v->add_option("--out-dir", ver.out_dir, "write the suite report JSON here");
  v->add_option("--seed", ver.seed, "seed of the randomized checks")->capture_default_str();
  v->add_option("--threads", ver.threads, "solver threads")->check(CLI::PositiveNumber);

  TableArgs tab;
  auto* t = app.add_subcommand("tabulate-special", "tabulate Psi and M, or the steady solution, as CSV");
  t->add_option("--table", tab.table, "psi (tau, psi, m1, m2) or steady (x, v, f)")
      ->check(CLI::IsMember({"psi", "steady"}))
      ->capture_default_str();
  t->add_option("--min", tab.min, "first value of tau, or of x for the steady table")->capture_default_str();
  t->add_option("--max", tab.max, "last value of tau or x")->capture_default_str();
  t->add_option("--points", tab.points, "number of tau or x values")->capture_default_str();
  t->add_flag("--log", tab.log, "logarithmic spacing of tau or x");
  t->add_option("--v-min", tab.v_min, "first velocity (steady table)");
  t->add_option("--v-max", tab.v_max, "last velocity (steady table)");
  t->add_option("--v-points", tab.v_points, "number of velocities (steady table)");
  t->add_option("--output", tab.output, "CSV file; standard output when omitted");

  HolderArgs hol;
  auto* h = app.add_subcommand("holder-probe", "Hoelder seminorm of a field CSV dump");
  h->add_option("--field", hol.field, "field CSV with columns t, x, v, f")->required();
  h->add_option("--alpha", hol.alpha, "exponent in (0, 1]")->capture_default_str();
  h->add_option("--metric", hol.metric, "kinetic or euclidean")
      ->check(CLI::IsMember({"kinetic", "euclidean"}))
      ->capture_default_str();
  h->add_option("--pairs", hol.pairs, "random pairs in addition to neighbours")->capture_default_str();
  h->add_option("--seed", hol.seed, "seed of the random pairs")->capture_default_str();
  h->add_option("--limit", hol.limit, "fail when the seminorm exceeds this positive value");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (*r) return cmd_run(run);
  if (*v) return cmd_verify(ver);
  if (*t) return cmd_tabulate(tab);
  return cmd_holder(hol);
}
