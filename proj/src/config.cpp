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
#include "kfp/config.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "kfp/error.hpp"
#include "kfp/io.hpp"

namespace kfp::config {

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& what) {
  std::ostringstream os;
  os << origin << ":" << line << ": " << what;
  throw Error(ErrorCode::config_error, os.str());
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

// Typed access to one block; every key read is marked, and finish() rejects
// whatever was not read.
class Block {
 public:
  Block(const Node& node, std::string path, const std::string& origin)
      : node_(node), path_(std::move(path)), origin_(origin) {}

  const Node::Entry* take(const std::string& key) {
    used_.insert(key);
    auto it = node_.values.find(key);
    return it == node_.values.end() ? nullptr : &it->second;
  }

  double number(const std::string& key, double def, double lo, double hi, bool open_lo = false) {
    const auto* e = take(key);
    if (!e) return def;
    double v = 0.0;
    const auto& s = e->value;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
      fail(origin_, e->line, name(key) + " must be a number, got '" + s + "'");
    if (v > hi || v < lo || (open_lo && v == lo)) {
      std::ostringstream os;
      os << name(key) << " = " << s << " is outside " << (open_lo ? "(" : "[") << lo << ", " << hi
         << "]";
      fail(origin_, e->line, os.str());
    }
    return v;
  }

  long integer(const std::string& key, long def, long lo, long hi) {
    const auto* e = take(key);
    if (!e) return def;
    long v = 0;
    const auto& s = e->value;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
      fail(origin_, e->line, name(key) + " must be an integer, got '" + s + "'");
    if (v < lo || v > hi) {
      std::ostringstream os;
      os << name(key) << " = " << v << " is outside [" << lo << ", " << hi << "]";
      fail(origin_, e->line, os.str());
    }
    return v;
  }

  bool flag(const std::string& key, bool def) {
    const auto* e = take(key);
    if (!e) return def;
    if (e->value == "true" || e->value == "yes" || e->value == "on") return true;
    if (e->value == "false" || e->value == "no" || e->value == "off") return false;
    fail(origin_, e->line, name(key) + " must be true or false, got '" + e->value + "'");
  }

  std::string word(const std::string& key, const std::string& def,
                   const std::vector<std::string>& allowed) {
    const auto* e = take(key);
    if (!e) return def;
    for (const auto& a : allowed)
      if (a == e->value) return a;
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    fail(origin_, e->line, name(key) + " = '" + e->value + "' is not one of: " + list);
  }

  Expression expr(const std::string& key, Expression def = {}) {
    const auto* e = take(key);
    if (!e) return def;
    try {
      return Expression::parse(e->value);
    } catch (const Error& err) {
      fail(origin_, e->line, name(key) + ": " + err.what());
    }
  }

  /// Raw (unquoted) value of a key, or def when absent.
  std::string text(const std::string& key, const std::string& def = {}) {
    const auto* e = take(key);
    return e ? e->value : def;
  }

  int line_of(const std::string& key) const {
    auto it = node_.values.find(key);
    return it == node_.values.end() ? node_.line : it->second.line;
  }

  const Node* block(const std::string& key) {
    used_blocks_.insert(key);
    auto it = node_.blocks.find(key);
    return it == node_.blocks.end() ? nullptr : it->second.get();
  }

  std::string child_path(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  void finish() const {
    for (const auto& [k, e] : node_.values)
      if (!used_.count(k)) fail(origin_, e.line, "unknown key '" + name(k) + "'");
    for (const auto& [k, b] : node_.blocks)
      if (!used_blocks_.count(k)) fail(origin_, b->line, "unknown block '" + child_path(k) + "'");
  }

  const std::string& origin() const { return origin_; }

 private:
  std::string name(const std::string& key) const { return child_path(key); }

  const Node& node_;
  std::string path_;
  const std::string& origin_;
  std::set<std::string> used_, used_blocks_;
};

const Node kEmpty{};


// Rows of one wall sorted by velocity.
using TableRows = std::vector<std::pair<double, double>>;

double interpolate(const TableRows& rows, double v) {
  if (rows.empty() || v < rows.front().first || v > rows.back().first) return 0.0;
  auto hi = std::lower_bound(rows.begin(), rows.end(), v,
                             [](const auto& r, double x) { return r.first < x; });
  if (hi->first == v || hi == rows.begin()) return hi->second;
  auto lo = hi - 1;
  const double s = (v - lo->first) / (hi->first - lo->first);
  return (1.0 - s) * lo->second + s * hi->second;
}

boundary::PhaseFn load_inflow_table(const std::string& file, double X, const std::string& origin,
                                    int line) {
  std::filesystem::path path(file);
  if (path.is_relative()) {
    const auto dir = std::filesystem::path(origin).parent_path();
    if (std::filesystem::exists(dir / path)) path = dir / path;
  }
  std::ifstream in(path);
  if (!in) fail(origin, line, "boundary.g_table: cannot read '" + file + "'");
  const std::string where = "boundary.g_table '" + file + "'";
  std::array<TableRows, 2> walls;
  std::array<int, 3> col{-1, -1, -1};
  std::string row;
  int row_no = 0;
  while (std::getline(in, row)) {
    ++row_no;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty() || row[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(row);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(trim(c));
    if (col[0] < 0) {
      for (int k = 0; k < static_cast<int>(cells.size()); ++k) {
        if (cells[k] == "x") col[0] = k;
        if (cells[k] == "v") col[1] = k;
        if (cells[k] == "g") col[2] = k;
      }
      if (col[0] < 0 || col[1] < 0 || col[2] < 0)
        fail(origin, line, where + " needs a header with columns x, v, g");
      continue;
    }
    double val[3];
    for (int k = 0; k < 3; ++k) {
      const auto& c = col[k] < static_cast<int>(cells.size()) ? cells[col[k]] : std::string();
      auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), val[k]);
      if (c.empty() || ec != std::errc() || ptr != c.data() + c.size() || !std::isfinite(val[k]))
        fail(origin, line, where + " row " + std::to_string(row_no) + ": bad number '" + c + "'");
    }
    const double tol = 1e-9 * std::max(1.0, X);
    int w = -1;
    if (std::abs(val[0]) <= tol) w = 0;
    if (std::abs(val[0] - X) <= tol) w = 1;
    if (w < 0)
      fail(origin, line, where + " row " + std::to_string(row_no) + ": x must be 0 or " + io::format_double(X));
    walls[w].push_back({val[1], val[2]});
  }
  if (walls[0].empty() && walls[1].empty()) fail(origin, line, where + " holds no data rows");
  for (auto& rows : walls) {
    std::sort(rows.begin(), rows.end());
    for (std::size_t k = 1; k < rows.size(); ++k)
      if (rows[k].first == rows[k - 1].first) fail(origin, line, where + " repeats a velocity");
  }
  return [walls, X](double, double x, double v) { return interpolate(walls[x < 0.5 * X ? 0 : 1], v); };
}

}  // namespace

Node parse_blocks(const std::string& text, const std::string& origin) {
  Node root;
  root.line = 1;
  std::vector<Node*> stack{&root};
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    // strip a comment outside quotes
    bool quoted = false;
    std::string line;
    for (char c : raw) {
      if (c == '"') quoted = !quoted;
      if (c == '#' && !quoted) break;
      line += c;
    }
    if (quoted) fail(origin, lineno, "unterminated string");
    line = trim(line);
    if (line.empty()) continue;
    if (line == "}") {
      if (stack.size() == 1) fail(origin, lineno, "unmatched '}'");
      stack.pop_back();
      continue;
    }
    if (line.back() == '{') {
      const std::string key = trim(line.substr(0, line.size() - 1));
      if (!is_identifier(key)) fail(origin, lineno, "malformed block name '" + key + "'");
      auto& blocks = stack.back()->blocks;
      if (blocks.count(key) || stack.back()->values.count(key))
        fail(origin, lineno, "duplicate block '" + key + "'");
      auto child = std::make_shared<Node>();
      child->line = lineno;
      blocks[key] = child;
      stack.push_back(child.get());
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(origin, lineno, "expected 'key = value' or 'block {'");
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!is_identifier(key)) fail(origin, lineno, "malformed key '" + key + "'");
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
      value = value.substr(1, value.size() - 2);
    else if (value.find('"') != std::string::npos)
      fail(origin, lineno, "stray quote in value of '" + key + "'");
    if (value.empty()) fail(origin, lineno, "missing value for '" + key + "'");
    auto& values = stack.back()->values;
    if (values.count(key) || stack.back()->blocks.count(key))
      fail(origin, lineno, "duplicate key '" + key + "'");
    values[key] = {value, lineno};
  }
  if (stack.size() != 1)
    fail(origin, stack.back()->line, "block opened here is never closed");
  return root;
}

RunConfig parse_run_config(const std::string& text, const std::string& origin) {
  const Node root = parse_blocks(text, origin);
  RunConfig cfg;
  cfg.origin = origin;
  cfg.text = text;
  cfg.hash = io::fnv1a_hex(text);
  Block top(root, "", cfg.origin);
  cfg.seed = static_cast<std::uint64_t>(top.integer("seed", 1, 0, std::numeric_limits<long>::max()));
  cfg.threads = static_cast<int>(top.integer("threads", 1, 1, 256));
  cfg.initial = top.expr("initial");
  cfg.box = top.expr("box");

  auto sub = [&](const std::string& key) {
    const Node* n = top.block(key);
    return Block(n ? *n : kEmpty, top.child_path(key), cfg.origin);
  };

  {
    auto b = sub("grid");
    auto& g = cfg.grid;
    g.X = b.number("X", g.X, 0.0, 1e6, true);
    g.V = b.number("V", g.V, 0.0, 1e3, true);
    g.T = b.number("T", g.T, 0.0, 1e6, true);
    g.nx = static_cast<int>(b.integer("nx", g.nx, 1, 100000));
    g.nv = static_cast<int>(b.integer("nv", g.nv, 2, 100000));
    if (g.nv % 2) fail(cfg.origin, b.line_of("nv"), "grid.nv must be even (symmetric velocity nodes)");
    g.dt = b.number("dt", 0.0, 0.0, 1e6, true);
    g.cfl = b.number("cfl", g.cfl, 0.0, 1.0, true);
    b.finish();
  }
  {
    auto b = sub("coefficients");
    auto& k = cfg.coefficients;
    k.A = b.expr("A", k.A);
    k.B = b.expr("B");
    k.c = b.expr("c");
    k.s = b.expr("s");
    k.lambda = b.number("lambda", k.lambda, 1.0, 1e12, true);
    b.finish();
  }
  {
    auto b = sub("boundary");
    auto& bc = cfg.boundary;
    bc.type = b.word("type", bc.type,
                     {"absorbing", "inflow", "diffuse", "specular", "damped_specular"});
    bc.g = b.expr("g");
    bc.g_table = b.text("g_table");
    if (!bc.g_table.empty()) {
      if (bc.g) fail(cfg.origin, b.line_of("g_table"), "boundary.g and boundary.g_table are exclusive");
      bc.g_tabulated = load_inflow_table(bc.g_table, cfg.grid.X, cfg.origin, b.line_of("g_table"));
    }
    bc.a = b.number("a", bc.a, 0.0, 1.0);
    bc.theta = b.number("theta", bc.theta, 0.0, 1e6, true);
    bc.weight = b.expr("weight");
    bc.unit_flux = b.flag("unit_flux", bc.unit_flux);
    if (bc.type == "inflow" && !bc.g && !bc.g_tabulated)
      fail(cfg.origin, b.line_of("type"), "boundary.type = inflow needs boundary.g or boundary.g_table");
    b.finish();
  }
  {
    auto b = sub("scheme");
    auto& s = cfg.scheme;
    const auto type = b.word("type", "imex_upwind", {"imex_upwind", "viscous"});
    s.scheme = type == "viscous" ? Scheme::viscous : Scheme::imex_upwind;
    s.epsilon = b.number("epsilon", 0.0, 0.0, 1e6);
    s.cfl_limit = b.number("cfl_limit", s.cfl_limit, 0.0, 1.0, true);
    s.peclet_upwind = b.flag("peclet_upwind", s.peclet_upwind);
    if (s.scheme == Scheme::viscous && !(s.epsilon > 0.0))
      fail(cfg.origin, b.line_of("type"), "scheme.type = viscous needs scheme.epsilon > 0");
    if (s.scheme == Scheme::viscous && cfg.boundary.type != "inflow" &&
        cfg.boundary.type != "absorbing")
      fail(cfg.origin, b.line_of("type"), "the viscous scheme needs inflow or absorbing boundaries");
    b.finish();
  }
  {
    auto b = sub("pipeline");
    auto& p = cfg.pipeline;
    p.mode = b.word("mode", p.mode, {"march", "steady", "specular_iteration", "diffuse_slab"});
    p.steady_tolerance = b.number("steady_tolerance", p.steady_tolerance, 0.0, 1.0, true);
    p.tau = b.number("tau", p.tau, 0.0, 1.0, true);
    p.max_iterations = static_cast<int>(b.integer("max_iterations", p.max_iterations, 1, 1000000));
    p.tolerance = b.number("tolerance", p.tolerance, 0.0, 1.0, true);
    if (p.mode == "specular_iteration" && cfg.boundary.type != "specular" &&
        cfg.boundary.type != "damped_specular")
      fail(cfg.origin, b.line_of("mode"), "specular_iteration needs a specular boundary");
    if (p.mode == "diffuse_slab" && cfg.boundary.type != "diffuse")
      fail(cfg.origin, b.line_of("mode"), "diffuse_slab needs a diffuse boundary");
    b.finish();
  }
  {
    auto b = sub("diagnostics");
    auto& d = cfg.diagnostics;
    d.mass = b.flag("mass", d.mass);
    d.mass_tolerance = b.number("mass_tolerance", d.mass_tolerance, 0.0, 1e6, true);
    d.ledger = b.flag("ledger", d.ledger);
    d.ledger_q = b.number("ledger_q", d.ledger_q, 0.0, 100.0);
    d.ledger_tolerance = b.number("ledger_tolerance", d.ledger_tolerance, 0.0, 1e6);
    d.max_principle = b.flag("max_principle", d.max_principle);
    d.compare_steady = b.flag("compare_steady", d.compare_steady);
    d.steady_error_tolerance =
        b.number("steady_error_tolerance", d.steady_error_tolerance, 0.0, 1e6, true);
    d.boundary_exponents = b.flag("boundary_exponents", d.boundary_exponents);
    d.steady_residual = b.flag("steady_residual", d.steady_residual);
    if (const Node* hn = b.block("holder")) {
      Block h(*hn, b.child_path("holder"), cfg.origin);
      auto& hc = d.holder;
      hc.enabled = h.flag("enabled", true);
      hc.alpha = h.number("alpha", hc.alpha, 0.0, 1.0, true);
      hc.metric = h.word("metric", "kinetic", {"kinetic", "euclidean"}) == "kinetic"
                      ? diagnostics::Metric::kinetic
                      : diagnostics::Metric::euclidean;
      hc.random_pairs = static_cast<std::size_t>(h.integer("random_pairs", 100000, 0, 100000000));
      hc.limit = h.number("limit", 0.0, 0.0, 1e12);
      h.finish();
    }
    if (const Node* on = b.block("oscillation")) {
      Block o(*on, b.child_path("oscillation"), cfg.origin);
      auto& oc = d.oscillation;
      oc.enabled = o.flag("enabled", true);
      oc.x0 = o.number("x0", oc.x0, -1e6, 1e6);
      oc.v0 = o.number("v0", oc.v0, -1e6, 1e6);
      oc.ladder.r0 = o.number("r0", oc.ladder.r0, 0.0, 1e6, true);
      oc.ladder.ratio = o.number("ratio", oc.ladder.ratio, 0.0, 0.999, true);
      oc.ladder.depth = static_cast<int>(o.integer("depth", oc.ladder.depth, 2, 60));
      oc.min_slope = o.number("min_slope", oc.min_slope, -1e6, 1e6);
      o.finish();
    }
    b.finish();
  }
  {
    auto b = sub("output");
    auto& o = cfg.output;
    o.fields = b.flag("fields", o.fields);
    o.every = static_cast<int>(b.integer("every", o.every, 0, 100000000));
    o.ledger = b.flag("ledger", o.ledger);
    b.finish();
  }
  top.finish();
  cfg.scheme.threads = cfg.threads;

  // coefficient bounds are part of validation: a violation is a config error
  try {
    const auto p = make_problem(cfg);
    p.coeffs.validate(cfg.grid.T, cfg.grid.X, cfg.grid.V, 1000, cfg.seed);
    const double cfl = p.dt * cfg.grid.V / p.xgrid.h;
    if (cfl > cfg.scheme.cfl_limit * (1.0 + 1e-12)) {
      std::ostringstream os;
      os << "CFL number dt*V/h_x = " << cfl << " exceeds scheme.cfl_limit = " << cfg.scheme.cfl_limit;
      throw Error(ErrorCode::config_error, os.str());
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config_error) throw;
    throw Error(ErrorCode::config_error, cfg.origin + ": " + e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(io::read_file(path), path);
}

int step_count(const RunConfig& cfg) {
  const auto& g = cfg.grid;
  const double dt0 = g.dt > 0.0 ? g.dt : g.cfl * (g.X / g.nx) / g.V;
  return std::max(1, static_cast<int>(std::ceil(g.T / dt0 - 1e-9)));
}

namespace {

CoefficientField::Fn wrap(const Expression& e) {
  if (!e) return {};
  return [e](double t, double x, double v) { return e(t, x, v); };
}

}  // namespace

Problem make_problem(const RunConfig& cfg) {
  const auto& g = cfg.grid;
  Problem p;
  p.xgrid = SpaceGrid::uniform(g.X, g.nx);
  p.vgrid = VelocityGrid::uniform(g.V, g.nv);
  p.dt = g.T / step_count(cfg);

  const auto& k = cfg.coefficients;
  p.coeffs.A = wrap(k.A);
  p.coeffs.B = wrap(k.B);
  p.coeffs.c = wrap(k.c);
  if (k.s && !(k.s.is_constant() && k.s({}) == 0.0)) p.coeffs.s = wrap(k.s);
  p.coeffs.lambda = k.lambda;
  p.coeffs.time_dependent = k.A.depends_on_t() || (k.B && k.B.depends_on_t()) ||
                            (k.c && k.c.depends_on_t());

  const auto& b = cfg.boundary;
  if (b.type == "absorbing") {
    p.spec = boundary::Inflow{{}, false};
  } else if (b.type == "inflow") {
    p.spec = b.g_tabulated ? boundary::Inflow{b.g_tabulated, false}
                           : boundary::Inflow{wrap(b.g), b.g.depends_on_t()};
  } else if (b.type == "diffuse") {
    boundary::PhaseFn w = wrap(b.weight);
    if (!w) {
      const auto m = boundary::boundary_maxwellian(b.theta, 1);
      w = [m](double, double, double v) { return m(v); };
    }
    p.spec = boundary::Diffuse{w, b.unit_flux};
  } else if (b.type == "specular") {
    p.spec = boundary::Specular{};
  } else {
    p.spec = boundary::DampedSpecular{b.a};
  }
  p.initial = wrap(cfg.initial);
  p.box_data = wrap(cfg.box);
  p.box_data_time_dependent = cfg.box && cfg.box.depends_on_t();
  return p;
}

iteration::IterationConfig make_iteration_config(const RunConfig& cfg) {
  iteration::IterationConfig it;
  it.a = cfg.boundary.type == "specular" ? 1.0 : cfg.boundary.a;
  it.tau = cfg.pipeline.tau;
  it.max_iterations = cfg.pipeline.max_iterations;
  it.tolerance = cfg.pipeline.tolerance;
  it.solver = cfg.scheme;
  it.solver.threads = cfg.threads;
  return it;
}

}  // namespace kfp::config
