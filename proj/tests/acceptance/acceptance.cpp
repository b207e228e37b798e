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
// Runs every acceptance criterion and prints one PASS/FAIL line per criterion,
// followed by the individual measurements. Exit status 0 iff all pass.
#include <cstdio>
#include <cstdlib>
#include <string>

#include "kfp/verification.hpp"

int main(int argc, char** argv) {
  kfp::verification::VerifyOptions options;
  bool verbose = false;
  for (int k = 1; k < argc; ++k) {
    const std::string arg = argv[k];
    if (arg == "-v") verbose = true;
  }
  int failed = 0;
  for (int id = 1; id <= kfp::verification::criterion_count(); ++id) {
    auto r = kfp::verification::run_criterion(id, options);
    std::printf("criterion %2d %s  %s (%.2f s)\n", id, r.passed ? "PASS" : "FAIL", r.title.c_str(),
                r.seconds);
    for (const auto& c : r.checks)
      if (verbose || !c.passed)
        std::printf("    %s %s: %.6g (limit %.6g) %s\n", c.passed ? "ok  " : "FAIL", c.name.c_str(),
                    c.measured, c.tolerance, c.detail.c_str());
    std::fflush(stdout);
    if (!r.passed) ++failed;
  }
  std::printf("%d of %d criteria passed\n", kfp::verification::criterion_count() - failed,
              kfp::verification::criterion_count());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
