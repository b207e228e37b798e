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
#include "kfp/diagnostics.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <random>
#include <sstream>

#include "json.hpp"
#include "kfp/analytic.hpp"

namespace kfp::diagnostics {

namespace {

struct Line {
  double slope = 0.0, intercept = 0.0, ssr = 0.0, sxx = 0.0;
};

Line line_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  Line l;
  double sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    l.sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  l.slope = sxy / l.sxx;
  l.intercept = my - l.slope * mx;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double r = y[k] - l.intercept - l.slope * x[k];
    l.ssr += r * r;
  }
  return l;
}

std::vector<std::size_t> indices_in(const std::vector<double>& axis, double lo, double hi) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < axis.size(); ++k)
    if (axis[k] >= lo && axis[k] <= hi) out.push_back(k);
  return out;
}

std::vector<double> log_grid(double a, double b, int n) {
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) out[k] = a * std::pow(b / a, static_cast<double>(k) / (n - 1));
  return out;
}

}  // namespace

GriddedField GriddedField::sample(const std::function<double(double, double)>& fn,
                                  std::vector<double> x, std::vector<double> v) {
  GriddedField g;
  g.x = std::move(x);
  g.v = std::move(v);
  g.f.resize(g.x.size() * g.v.size());
  for (std::size_t i = 0; i < g.x.size(); ++i)
    for (std::size_t j = 0; j < g.v.size(); ++j) g.f[i * g.v.size() + j] = fn(g.x[i], g.v[j]);
  return g;
}

GriddedField GriddedField::from_solution(const SolutionField& field) {
  GriddedField g;
  g.t = {field.t};
  g.x = field.xgrid.x;
  g.v = field.vgrid.v;
  g.f = field.f;
  return g;
}

double kinetic_distance(const PhasePoint& a, const PhasePoint& b) {
  // the later point is the centre of the cylinder
  const PhasePoint& c = a.t >= b.t ? a : b;
  const PhasePoint& z = a.t >= b.t ? b : a;
  const double dt = z.t - c.t;
  double d = std::sqrt(std::abs(dt));
  for (std::size_t k = 0; k < c.x.size(); ++k)
    d = std::max(d, std::cbrt(std::abs(z.x[k] - c.x[k] - dt * c.v[k])));
  for (std::size_t k = 0; k < c.v.size(); ++k) d = std::max(d, std::abs(z.v[k] - c.v[k]));
  return d;
}

double distance(const PhasePoint& a, const PhasePoint& b, Metric metric) {
  if (metric == Metric::kinetic) return kinetic_distance(a, b);
  double s = (a.t - b.t) * (a.t - b.t);
  for (std::size_t k = 0; k < a.x.size(); ++k) s += (a.x[k] - b.x[k]) * (a.x[k] - b.x[k]);
  for (std::size_t k = 0; k < a.v.size(); ++k) s += (a.v[k] - b.v[k]) * (a.v[k] - b.v[k]);
  return std::sqrt(s);
}

HolderEstimate holder_seminorm(const GriddedField& field, double alpha, const Region& region,
                               const HolderOptions& options) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw Error(ErrorCode::invalid_argument, "Hoelder exponent must lie in (0, 1]");
  const auto kt = indices_in(field.t, region.t_min, region.t_max);
  const auto ix = indices_in(field.x, region.x_min, region.x_max);
  const auto jv = indices_in(field.v, region.v_min, region.v_max);
  if (kt.size() * ix.size() * jv.size() < 2)
    throw Error(ErrorCode::invalid_argument, "region holds fewer than two grid nodes");

  HolderEstimate est;
  auto point = [&](std::size_t k, std::size_t i, std::size_t j) {
    return PhasePoint{field.t[k], {field.x[i]}, {field.v[j]}};
  };
  auto consider = [&](std::size_t k0, std::size_t i0, std::size_t j0, std::size_t k1,
                      std::size_t i1, std::size_t j1) {
    const PhasePoint a = point(k0, i0, j0), b = point(k1, i1, j1);
    const double d = distance(a, b, options.metric);
    if (d <= 0.0) return;
    ++est.pairs;
    const double q = std::abs(field.at(k0, i0, j0) - field.at(k1, i1, j1)) / std::pow(d, alpha);
    if (q > est.seminorm) {
      est.seminorm = q;
      est.argmax_a = a;
      est.argmax_b = b;
    }
  };
  for (std::size_t a = 0; a < kt.size(); ++a)
    for (std::size_t b = 0; b < ix.size(); ++b)
      for (std::size_t c = 0; c < jv.size(); ++c) {
        if (a + 1 < kt.size()) consider(kt[a], ix[b], jv[c], kt[a + 1], ix[b], jv[c]);
        if (b + 1 < ix.size()) consider(kt[a], ix[b], jv[c], kt[a], ix[b + 1], jv[c]);
        if (c + 1 < jv.size()) consider(kt[a], ix[b], jv[c], kt[a], ix[b], jv[c + 1]);
      }
  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<std::size_t> pk(0, kt.size() - 1), pi(0, ix.size() - 1),
      pj(0, jv.size() - 1);
  for (std::size_t n = 0; n < options.random_pairs; ++n) {
    const std::size_t k0 = kt[pk(rng)], i0 = ix[pi(rng)], j0 = jv[pj(rng)];
    const std::size_t k1 = kt[pk(rng)], i1 = ix[pi(rng)], j1 = jv[pj(rng)];
    consider(k0, i0, j0, k1, i1, j1);
  }
  return est;
}

ExponentFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 5)
    throw Error(ErrorCode::invalid_argument, "an exponent fit needs at least five samples");
  ExponentFit fit;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0.0 && y[k] > 0.0)) {
      std::ostringstream os;
      os << "exponent fit sample " << k << " is not positive (" << x[k] << ", " << y[k] << ")";
      throw Error(ErrorCode::invalid_argument, os.str());
    }
    fit.log_x.push_back(std::log(x[k]));
    fit.log_y.push_back(std::log(y[k]));
  }
  const Line l = line_fit(fit.log_x, fit.log_y);
  const double n = static_cast<double>(x.size());
  fit.slope = l.slope;
  fit.intercept = l.intercept;
  fit.residual = std::sqrt(l.ssr / n);
  const double se = std::sqrt(l.ssr / (n - 2.0) / l.sxx);
  boost::math::students_t dist(n - 2.0);
  fit.half_width = boost::math::quantile(boost::math::complement(dist, 0.025)) * se;
  return fit;
}

OscillationProfile oscillation_decay(const GriddedField& field, const PhasePoint& z0,
                                     const Ladder& ladder) {
  if (!(ladder.r0 > 0.0 && ladder.ratio > 0.0 && ladder.ratio < 1.0) || ladder.depth < 0)
    throw Error(ErrorCode::invalid_argument, "ladder needs r0 > 0 and ratio in (0, 1)");
  const double x0 = z0.x.at(0), v0 = z0.v.at(0);
  OscillationProfile p;
  std::vector<double> lr, lo;
  for (int k = 0; k <= ladder.depth; ++k) {
    const double r = ladder.r0 * std::pow(ladder.ratio, k);
    const double r2 = r * r, r3 = r2 * r;
    double mn = std::numeric_limits<double>::infinity(), mx = -mn;
    std::size_t count = 0;
    for (std::size_t a = 0; a < field.t.size(); ++a) {
      double dlo, dhi;  // admissible range of x - x0
      if (field.stationary()) {
        // a time-independent field fills the cylinder's time extent
        dlo = std::min(0.0, -r2 * v0) - r3;
        dhi = std::max(0.0, -r2 * v0) + r3;
      } else {
        const double s = field.t[a] - z0.t;
        if (!(s > -r2 && s <= 0.0)) continue;
        dlo = s * v0 - r3;
        dhi = s * v0 + r3;
      }
      for (std::size_t i = 0; i < field.x.size(); ++i) {
        const double d = field.x[i] - x0;
        if (!(d > dlo && d < dhi)) continue;
        for (std::size_t j = 0; j < field.v.size(); ++j) {
          if (!(std::abs(field.v[j] - v0) < r)) continue;
          const double val = field.at(a, i, j);
          mn = std::min(mn, val);
          mx = std::max(mx, val);
          ++count;
        }
      }
    }
    const double osc = count ? mx - mn : 0.0;
    p.r.push_back(r);
    p.osc.push_back(osc);
    p.nodes.push_back(count);
    if (count >= 2 && osc > 0.0) {
      lr.push_back(std::log(r));
      lo.push_back(std::log(osc));
    }
  }
  p.usable = static_cast<int>(lr.size());
  if (p.usable < 3) {
    std::ostringstream os;
    os << "only " << p.usable << " cylinders hold two or more nodes with positive oscillation";
    throw Error(ErrorCode::invalid_argument, os.str());
  }
  const Line l = line_fit(lr, lo);
  p.slope = l.slope;
  p.residual = std::sqrt(l.ssr / static_cast<double>(lr.size()));
  return p;
}

BoundaryExponents fit_boundary_exponents(const std::function<double(double, double)>& f,
                                         int samples, double residual_limit) {
  auto eval = f ? f : [](double x, double v) { return analytic::steady_solution(x, v).f; };
  BoundaryExponents b;
  const auto xs = log_grid(1e-6, 1e-2, samples);
  std::vector<double> y;
  for (double x : xs) y.push_back(eval(x, 0.0));
  b.alpha_x = fit_power_law(xs, y);

  const auto vs = log_grid(1e-3, 1e-1, samples);
  std::vector<double> scaled, literal;
  for (double v : vs) {
    scaled.push_back(eval(1e-8 * v * v * v, -v));
    literal.push_back(eval(1e-8, -v));
  }
  b.alpha_v = fit_power_law(vs, scaled);
  b.alpha_v_literal = fit_power_law(vs, literal);
  b.flagged = b.alpha_x.residual > residual_limit || b.alpha_v.residual > residual_limit;
  return b;
}

double max_principle_excess(const SolutionField& field) {
  return field.max_abs() - field.data_bound;
}

std::vector<std::string> DiagnosticsReport::failing() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.passed) out.push_back(c.name);
  return out;
}

std::string DiagnosticsReport::to_json() const {
  nlohmann::json j;
  j["passed"] = passed;
  j["version"] = version;
  j["config_hash"] = config_hash;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks)
    j["checks"].push_back({{"name", c.name},
                           {"passed", c.passed},
                           {"measured", c.measured},
                           {"tolerance", c.tolerance},
                           {"detail", c.detail}});
  j["parameters"] = nlohmann::json::object();
  for (const auto& [k, v] : parameters) j["parameters"][k] = v;
  j["sections"] = nlohmann::json::object();
  for (const auto& [k, v] : sections) {
    auto parsed = nlohmann::json::parse(v, nullptr, false);
    j["sections"][k] = parsed.is_discarded() ? nlohmann::json(v) : parsed;
  }
  return j.dump(2);
}

DiagnosticsReport verdict(std::vector<CheckResult> checks,
                          std::vector<std::pair<std::string, double>> parameters,
                          std::string config_hash) {
  if (checks.empty()) throw Error(ErrorCode::invalid_argument, "no checks to report");
  DiagnosticsReport r;
  r.passed = std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
  r.checks = std::move(checks);
  r.parameters = std::move(parameters);
  r.config_hash = std::move(config_hash);
  r.version = KFP_VERSION;
  return r;
}

}  // namespace kfp::diagnostics
