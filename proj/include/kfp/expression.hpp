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
#include <string>

namespace kfp {

/// Variables visible to an expression: time, position (x, y) and velocity (v, u).
struct ExprVars {
  double t = 0.0, x = 0.0, y = 0.0, v = 0.0, u = 0.0;
};

/// A compiled arithmetic expression. Grammar: numbers, the variables
/// t x y v u, the constant pi, + - * / ^ (right associative), parentheses,
/// and the functions exp log sqrt abs sin cos tanh and steady(x, v), the
/// analytic steady solution extended by its x -> 0+ limit.
class Expression {
 public:
  Expression() = default;
  /// Throws config_error naming the offending position.
  static Expression parse(const std::string& text);
  static Expression constant(double value);

  double operator()(const ExprVars& vars) const { return fn_(vars); }
  double operator()(double t, double x, double v) const { return fn_({t, x, 0.0, v, 0.0}); }

  bool depends_on_t() const { return uses_t_; }
  bool is_constant() const { return constant_; }
  const std::string& text() const { return text_; }
  explicit operator bool() const { return static_cast<bool>(fn_); }

 private:
  std::function<double(const ExprVars&)> fn_;
  std::string text_;
  bool uses_t_ = false;
  bool constant_ = false;
  friend class ExprParser;
};

/// steady(x, v) as exposed to expressions: the analytic solution for x > 0,
/// 0 for x <= 0 and v >= 0, and 3^{-1/3} |v|^{1/2} for x <= 0 and v < 0.
double steady_with_limit(double x, double v);

}  // namespace kfp
