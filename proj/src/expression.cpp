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
#include "kfp/expression.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "kfp/analytic.hpp"
#include "kfp/error.hpp"

namespace kfp {

using Fn = std::function<double(const ExprVars&)>;

double steady_with_limit(double x, double v) {
  if (x > 0.0) return analytic::steady_solution(x, v).f;
  return v >= 0.0 ? 0.0 : std::sqrt(-v) / std::cbrt(3.0);
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  Expression run() {
    Expression e;
    e.text_ = s_;
    auto [fn, c] = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    e.uses_t_ = uses_t_;
    e.constant_ = c;
    if (c) {
      const double value = fn({});
      e.fn_ = [value](const ExprVars&) { return value; };
    } else {
      e.fn_ = std::move(fn);
    }
    return e;
  }

 private:
  // a node and whether it is constant
  using Node = std::pair<Fn, bool>;

  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "expression \"" << s_ << "\" at column " << pos_ + 1 << ": " << what;
    throw Error(ErrorCode::config_error, os.str());
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static Node binary(Node a, Node b, double (*op)(double, double)) {
    auto fa = std::move(a.first), fb = std::move(b.first);
    return {[fa, fb, op](const ExprVars& x) { return op(fa(x), fb(x)); }, a.second && b.second};
  }

  Node expr() {
    Node lhs = term();
    for (;;) {
      if (eat('+'))
        lhs = binary(std::move(lhs), term(), [](double a, double b) { return a + b; });
      else if (eat('-'))
        lhs = binary(std::move(lhs), term(), [](double a, double b) { return a - b; });
      else
        return lhs;
    }
  }

  Node term() {
    Node lhs = unary();
    for (;;) {
      if (eat('*'))
        lhs = binary(std::move(lhs), unary(), [](double a, double b) { return a * b; });
      else if (eat('/'))
        lhs = binary(std::move(lhs), unary(), [](double a, double b) { return a / b; });
      else
        return lhs;
    }
  }

  Node unary() {
    if (eat('-')) {
      auto [f, c] = unary();
      return {[f](const ExprVars& x) { return -f(x); }, c};
    }
    if (eat('+')) return unary();
    return power();
  }

  Node power() {
    Node base = primary();
    if (eat('^'))
      return binary(std::move(base), unary(), [](double a, double b) { return std::pow(a, b); });
    return base;
  }

  Node primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (eat('(')) {
      Node n = expr();
      if (!eat(')')) fail("missing ')'");
      return n;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return name();
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Node number() {
    double value = 0.0;
    const char* first = s_.data() + pos_;
    auto [ptr, ec] = std::from_chars(first, s_.data() + s_.size(), value);
    if (ec != std::errc()) fail("malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return {[value](const ExprVars&) { return value; }, true};
  }

  Node name() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string id = s_.substr(start, pos_ - start);
    skip();
    if (pos_ < s_.size() && s_[pos_] == '(') return call(id);
    if (id == "t") {
      uses_t_ = true;
      return {[](const ExprVars& x) { return x.t; }, false};
    }
    if (id == "x") return {[](const ExprVars& x) { return x.x; }, false};
    if (id == "y") return {[](const ExprVars& x) { return x.y; }, false};
    if (id == "v") return {[](const ExprVars& x) { return x.v; }, false};
    if (id == "u") return {[](const ExprVars& x) { return x.u; }, false};
    if (id == "pi") return {[](const ExprVars&) { return std::numbers::pi; }, true};
    pos_ = start;
    fail("unknown variable '" + id + "'");
  }

  Node call(const std::string& id) {
    const std::size_t at = pos_;
    eat('(');
    std::vector<Node> args;
    if (!eat(')')) {
      do args.push_back(expr());
      while (eat(','));
      if (!eat(')')) fail("missing ')' after arguments of " + id);
    }
    auto want = [&](std::size_t n) {
      if (args.size() != n) {
        pos_ = at;
        std::ostringstream os;
        os << id << " takes " << n << " argument" << (n == 1 ? "" : "s");
        fail(os.str());
      }
    };
    if (id == "steady") {
      want(2);
      return binary(std::move(args[0]), std::move(args[1]), steady_with_limit);
    }
    double (*op)(double) = nullptr;
    if (id == "exp") op = [](double a) { return std::exp(a); };
    else if (id == "log") op = [](double a) { return std::log(a); };
    else if (id == "sqrt") op = [](double a) { return std::sqrt(a); };
    else if (id == "abs") op = [](double a) { return std::abs(a); };
    else if (id == "sin") op = [](double a) { return std::sin(a); };
    else if (id == "cos") op = [](double a) { return std::cos(a); };
    else if (id == "tanh") op = [](double a) { return std::tanh(a); };
    if (!op) {
      pos_ = at - id.size();
      fail("unknown function '" + id + "'");
    }
    want(1);
    auto f = std::move(args[0].first);
    return {[f, op](const ExprVars& x) { return op(f(x)); }, args[0].second};
  }

  const std::string& s_;
  std::size_t pos_ = 0;
  bool uses_t_ = false;
};

Expression Expression::parse(const std::string& text) { return ExprParser(text).run(); }

Expression Expression::constant(double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  return parse(os.str());
}

}  // namespace kfp
