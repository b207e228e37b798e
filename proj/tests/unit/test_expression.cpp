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
#include <numbers>

#include "doctest.h"
#include "kfp/analytic.hpp"
#include "kfp/error.hpp"
#include "kfp/expression.hpp"

using kfp::Expression;
using kfp::ExprVars;

namespace {

double eval(const char* s, ExprVars vars = {}) { return Expression::parse(s)(vars); }

kfp::ErrorCode parse_error(const char* s) {
  try {
    Expression::parse(s);
  } catch (const kfp::Error& e) {
    return e.code();
  }
  return kfp::ErrorCode{};
}

}  // namespace

TEST_CASE("arithmetic follows the usual precedence") {
  CHECK(eval("1 + 2 * 3") == 7.0);
  CHECK(eval("(1 + 2) * 3") == 9.0);
  CHECK(eval("2 ^ 3 ^ 2") == 512.0);
  CHECK(eval("-2 ^ 2") == -4.0);
  CHECK(eval("2 ^ -1") == 0.5);
  CHECK(eval("8 / 4 / 2") == 1.0);
  CHECK(eval("1e-3 * 2") == doctest::Approx(2e-3));
  CHECK(eval("pi") == std::numbers::pi);
}

TEST_CASE("variables and functions") {
  ExprVars z{0.5, 2.0, 3.0, -1.5, 4.0};
  CHECK(eval("t + x + y + v + u", z) == doctest::Approx(8.0));
  CHECK(eval("exp(x) * sin(v) + cos(t) - abs(v) + sqrt(u) + log(x) + tanh(y)", z) ==
        doctest::Approx(std::exp(2.0) * std::sin(-1.5) + std::cos(0.5) - 1.5 + 2.0 +
                        std::log(2.0) + std::tanh(3.0)));
  CHECK(eval("steady(x, v)", z) == doctest::Approx(kfp::analytic::steady_solution(2.0, -1.5).f));
  CHECK(eval("steady(0, 2)") == 0.0);
  CHECK(eval("steady(0, -4)") == doctest::Approx(2.0 / std::cbrt(3.0)));
}

TEST_CASE("time dependence and constants are detected") {
  CHECK(Expression::parse("sin(3*t) * x").depends_on_t());
  CHECK(!Expression::parse("x * v").depends_on_t());
  CHECK(Expression::parse("2 * pi + exp(1)").is_constant());
  CHECK(!Expression::parse("x").is_constant());
  CHECK(Expression::constant(0.1)({}) == 0.1);
}

TEST_CASE("malformed expressions are configuration errors") {
  for (const char* s : {"", "1 +", "(1 + 2", "foo(1)", "z + 1", "sin(1, 2)", "steady(1)", "1 2",
                        "3 $ 4"})
    CHECK(parse_error(s) == kfp::ErrorCode::config_error);
  try {
    Expression::parse("x + q");
  } catch (const kfp::Error& e) {
    CHECK(std::string(e.what()).find("column 5") != std::string::npos);
    CHECK(std::string(e.what()).find("'q'") != std::string::npos);
  }
}
