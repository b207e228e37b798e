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
#include "kfp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "kfp/error.hpp"

namespace kfp {

namespace {

template <class F>
void parallel_for(int n, int threads, F&& body) {
  if (threads <= 1 || n < 2 * threads) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  const int chunk = (n + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    int lo = t * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &body] {
      for (int i = lo; i < hi; ++i) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

// Forward sweep of a tridiagonal factorisation. a: sub-diagonal, b: diagonal,
// c: super-diagonal (overwritten by the modified super-diagonal), m: inverse
// pivots.
void factor(const double* a, const double* b, double* c, double* m, int n) {
  m[0] = 1.0 / b[0];
  c[0] *= m[0];
  for (int k = 1; k < n; ++k) {
    m[k] = 1.0 / (b[k] - a[k] * c[k - 1]);
    c[k] *= m[k];
  }
}

void solve_factored(const double* a, const double* c, const double* m, double* d, int n) {
  d[0] *= m[0];
  for (int k = 1; k < n; ++k) d[k] = (d[k] - a[k] * d[k - 1]) * m[k];
  for (int k = n - 2; k >= 0; --k) d[k] -= c[k] * d[k + 1];
}

double eval_or_zero(const boundary::PhaseFn& fn, double t, double x, double v) {
  return fn ? fn(t, x, v) : 0.0;
}

}  // namespace

boundary::Wall SolutionField::wall(int w) const {
  return w == 0 ? boundary::Wall{0.0, -1.0, 0} : boundary::Wall{xgrid.X, 1.0, 1};
}

double SolutionField::mass() const {
  double m = 0.0;
  const int nv = vgrid.size();
  for (int i = 0; i < xgrid.size(); ++i)
    for (int j = 0; j < nv; ++j) m += vgrid.w[j] * at(i, j);
  return m * xgrid.h;
}

double SolutionField::max_abs() const {
  double m = 0.0;
  for (double x : f) m = std::max(m, std::abs(x));
  return m;
}

TraceSplit extract_traces(const SolutionField& field) {
  TraceSplit s;
  const int m = field.vgrid.size();
  for (int w = 0; w < 2; ++w) {
    const auto wall = field.wall(w);
    if (static_cast<int>(field.trace[w].size()) != m)
      throw Error(ErrorCode::missing_trace, "traces not populated on the " + wall.name());
    s.outgoing[w].assign(m, 0.0);
    s.incoming[w].assign(m, 0.0);
    s.measure[w] = boundary::boundary_measure(field.vgrid, wall);
    for (int j = 0; j < m; ++j) {
      switch (wall.flow(field.vgrid.v[j])) {
        case boundary::Flow::outgoing: s.outgoing[w][j] = field.trace[w][j]; break;
        case boundary::Flow::incoming: s.incoming[w][j] = field.trace[w][j]; break;
        case boundary::Flow::grazing: break;
      }
    }
  }
  return s;
}

// Solver ---------------------------------------------------------------------

Solver::Solver(Problem problem, SolverConfig cfg)
    : problem_(std::move(problem)), cfg_(cfg) {
  const auto& xg = problem_.xgrid;
  const auto& vg = problem_.vgrid;
  if (!(problem_.dt > 0.0)) throw Error(ErrorCode::config_error, "time step must be positive");
  if (xg.n < 1 || vg.n < 2) throw Error(ErrorCode::config_error, "grid is empty");
  const double cfl = problem_.dt * vg.V / xg.h;
  if (!(cfl <= cfg_.cfl_limit * (1.0 + 1e-12))) {
    std::ostringstream os;
    os << "CFL number dt*V/h_x = " << cfl << " exceeds the limit " << cfg_.cfl_limit;
    throw Error(ErrorCode::cfl_violation, os.str());
  }
  if (cfg_.scheme == Scheme::viscous) {
    if (!(cfg_.epsilon > 0.0))
      throw Error(ErrorCode::config_error, "the viscous scheme needs epsilon > 0");
    if (boundary::is_reflecting(problem_.spec))
      throw Error(ErrorCode::config_error,
                  "the viscous scheme is defined for inflow boundary data only");
  }
  if (!problem_.coeffs.A) throw Error(ErrorCode::config_error, "diffusion coefficient missing");
  boundary::validate(problem_.spec);

  auto& fld = field_;
  fld.xgrid = xg;
  fld.vgrid = vg;
  const int nx = xg.size(), m = vg.size();
  const double t0 = problem_.t0;
  const bool tabulated = !problem_.initial_values.empty();
  if (tabulated && problem_.initial_values.size() != static_cast<std::size_t>(nx) * m)
    throw Error(ErrorCode::config_error, "initial grid function has the wrong size");
  fld.t = t0;
  fld.f.assign(static_cast<std::size_t>(nx) * m, 0.0);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < m; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * m + j;
      double val = vg.is_box_edge(j) ? eval_or_zero(problem_.box_data, t0, xg.x[i], vg.v[j])
                   : tabulated       ? problem_.initial_values[k]
                                     : eval_or_zero(problem_.initial, t0, xg.x[i], vg.v[j]);
      fld.at(i, j) = val;
      fld.data_bound = std::max(fld.data_bound, std::abs(val));
    }

  const int ni = m - 2;
  if (!problem_.coeffs.time_dependent) {
    build_velocity_matrices(t0, mat_a_, mat_c_, mat_m_);
    cached_ = true;
  }
  if (cfg_.scheme == Scheme::viscous) {
    const double r = problem_.dt * cfg_.epsilon / (xg.h * xg.h);
    std::vector<double> a(nx, -r), b(nx, 1.0 + 2.0 * r);
    xdiff_c_.assign(nx, -r);
    xdiff_m_.assign(nx, 0.0);
    b.front() -= r;
    b.back() -= r;
    xdiff_c_.back() = 0.0;
    factor(a.data(), b.data(), xdiff_c_.data(), xdiff_m_.data(), nx);
  }
  (void)ni;
  refresh_traces(fld, t0, 0);
  if (cfg_.record_traces) history_.push_back(fld.trace);
}

void Solver::build_velocity_matrices(double t, std::vector<double>& A, std::vector<double>& C,
                                     std::vector<double>& M) const {
  const auto& xg = problem_.xgrid;
  const auto& vg = problem_.vgrid;
  const auto& k = problem_.coeffs;
  const int nx = xg.size(), ni = vg.size() - 2;
  const double hv = vg.h, dt = problem_.dt;
  A.assign(static_cast<std::size_t>(nx) * ni, 0.0);
  C.assign(A.size(), 0.0);
  M.assign(A.size(), 0.0);
  parallel_for(nx, cfg_.threads, [&](int i) {
    std::vector<double> b(ni);
    double* a = &A[static_cast<std::size_t>(i) * ni];
    double* c = &C[static_cast<std::size_t>(i) * ni];
    double* m = &M[static_cast<std::size_t>(i) * ni];
    const double x = xg.x[i];
    for (int r = 0; r < ni; ++r) {
      const int j = r + 1;
      const double vm = 0.5 * (vg.v[j - 1] + vg.v[j]);
      const double vp = 0.5 * (vg.v[j] + vg.v[j + 1]);
      const double am = k.a(t, x, vm), ap = k.a(t, x, vp);
      double lo = am / (hv * hv), up = ap / (hv * hv), di = -lo - up;
      if (k.Bd) {
        const double bm = k.Bd(t, x, vm), bp = k.Bd(t, x, vp);
        auto theta = [&](double bd, double af) {
          if (cfg_.peclet_upwind && std::abs(bd) * hv > 2.0 * af) return bd < 0.0 ? 1.0 : 0.0;
          return 0.5;
        };
        const double tp = theta(bp, ap), tm = theta(bm, am);
        di += (bp * tp - bm * (1.0 - tm)) / hv;
        up += bp * (1.0 - tp) / hv;
        lo -= bm * tm / hv;
      }
      const double bj = k.b(t, x, vg.v[j]);
      if (bj != 0.0) {
        const bool centred = !cfg_.peclet_upwind ||
                             (std::abs(bj) * hv <= 2.0 * am && std::abs(bj) * hv <= 2.0 * ap);
        if (centred) {
          lo -= bj / (2.0 * hv);
          up += bj / (2.0 * hv);
        } else if (bj > 0.0) {
          up += bj / hv;
          di -= bj / hv;
        } else {
          lo -= bj / hv;
          di += bj / hv;
        }
      }
      di += k.zeroth(t, x, vg.v[j]);
      a[r] = -dt * lo;
      b[r] = 1.0 - dt * di;
      c[r] = -dt * up;
    }
    // keep the raw end couplings: a[0] and the last super-diagonal entry are
    // needed for the Dirichlet data, the factorisation overwrites c
    factor(a, b.data(), c, m, ni);
  });
}

void Solver::refresh_traces(SolutionField& fld, double t, int step) {
  const auto& vg = fld.vgrid;
  const int m = vg.size(), nx = fld.xgrid.size();
  for (int w = 0; w < 2; ++w) {
    const auto wall = fld.wall(w);
    const int ib = w == 0 ? 0 : nx - 1;
    std::vector<double> out(m);
    for (int j = 0; j < m; ++j) out[j] = fld.at(ib, j);
    std::vector<double> in;
    const auto* inflow = std::get_if<boundary::Inflow>(&problem_.spec);
    if (inflow && !inflow->time_dependent) {
      if (static_inflow_[w].empty())
        static_inflow_[w] = boundary::apply_boundary(problem_.spec, out, vg, wall, t, step);
      in = static_inflow_[w];
    } else {
      in = boundary::apply_boundary(problem_.spec, out, vg, wall, t, step);
    }
    auto& tr = fld.trace[w];
    tr.assign(m, 0.0);
    for (int j = 0; j < m; ++j) {
      if (wall.flow(vg.v[j]) == boundary::Flow::incoming) {
        fld.data_bound = std::max(fld.data_bound, std::abs(in[j]));
        if (cfg_.scheme == Scheme::viscous) {
          const double s = 2.0 * cfg_.epsilon / fld.xgrid.h, sp = std::abs(vg.v[j]);
          tr[j] = (s * out[j] + sp * in[j]) / (s + sp);
        } else {
          tr[j] = in[j];
        }
        // transport reads the applied data, not the reported trace
        out[j] = in[j];
      } else {
        tr[j] = out[j];
      }
    }
    ghost_[w] = std::move(out);
  }
}

void Solver::transport(const SolutionField& from, std::vector<double>& out) const {
  const auto& vg = from.vgrid;
  const int nx = from.xgrid.size(), m = vg.size();
  const double ratio = problem_.dt / from.xgrid.h;
  for (int j = 1; j < m - 1; ++j) {
    const double v = vg.v[j];
    const double nu = ratio * v;
    if (v > 0.0) {
      double up = ghost_[0][j];
      for (int i = 0; i < nx; ++i) {
        const double fi = from.f[static_cast<std::size_t>(i) * m + j];
        out[static_cast<std::size_t>(i) * m + j] = fi - nu * (fi - up);
        up = fi;
      }
    } else if (v < 0.0) {
      double dn = ghost_[1][j];
      for (int i = nx - 1; i >= 0; --i) {
        const double fi = from.f[static_cast<std::size_t>(i) * m + j];
        out[static_cast<std::size_t>(i) * m + j] = fi - nu * (dn - fi);
        dn = fi;
      }
    }
  }
}

void Solver::diffuse_x(std::vector<double>& g) const {
  const int nx = problem_.xgrid.size(), m = problem_.vgrid.size();
  const double r = problem_.dt * cfg_.epsilon / (problem_.xgrid.h * problem_.xgrid.h);
  std::vector<double> a(nx, -r);
  parallel_for(m - 2, cfg_.threads, [&](int r0) {
    const int j = r0 + 1;
    std::vector<double> d(nx);
    for (int i = 0; i < nx; ++i) d[i] = g[static_cast<std::size_t>(i) * m + j];
    solve_factored(a.data(), xdiff_c_.data(), xdiff_m_.data(), d.data(), nx);
    for (int i = 0; i < nx; ++i) g[static_cast<std::size_t>(i) * m + j] = d[i];
  });
}

void Solver::solve_velocity(std::vector<double>& g, double t_new) {
  const auto& xg = problem_.xgrid;
  const auto& vg = problem_.vgrid;
  const auto& k = problem_.coeffs;
  const int nx = xg.size(), m = vg.size(), ni = m - 2;
  const double dt = problem_.dt;

  std::vector<double> ta, tc, tm;
  if (!cached_) build_velocity_matrices(t_new, ta, tc, tm);
  const auto& A = cached_ ? mat_a_ : ta;
  const auto& C = cached_ ? mat_c_ : tc;
  const auto& M = cached_ ? mat_m_ : tm;

  const bool cache_box = !problem_.box_data_time_dependent || !problem_.box_data;
  if (cache_box && static_box_.empty()) {
    static_box_.resize(2 * static_cast<std::size_t>(nx));
    for (int i = 0; i < nx; ++i) {
      static_box_[2 * i] = eval_or_zero(problem_.box_data, t_new, xg.x[i], vg.v.front());
      static_box_[2 * i + 1] = eval_or_zero(problem_.box_data, t_new, xg.x[i], vg.v.back());
    }
  }
  std::vector<double> bound(nx, 0.0);
  parallel_for(nx, cfg_.threads, [&](int i) {
    const double x = xg.x[i];
    const double lo_data = cache_box ? static_box_[2 * i]
                                     : eval_or_zero(problem_.box_data, t_new, x, vg.v.front());
    const double hi_data = cache_box ? static_box_[2 * i + 1]
                                     : eval_or_zero(problem_.box_data, t_new, x, vg.v.back());
    double* row = &g[static_cast<std::size_t>(i) * m];
    const double* a = &A[static_cast<std::size_t>(i) * ni];
    const double* c = &C[static_cast<std::size_t>(i) * ni];
    const double* mm = &M[static_cast<std::size_t>(i) * ni];
    double* d = row + 1;
    if (k.s)
      for (int r = 0; r < ni; ++r) d[r] += dt * k.s(t_new, x, vg.v[r + 1]);
    // Dirichlet couplings. The last super-diagonal entry is recovered from
    // the modified one: c'_{n-1} = c_{n-1} m_{n-1}.
    d[0] -= a[0] * lo_data;
    d[ni - 1] -= (c[ni - 1] / mm[ni - 1]) * hi_data;
    solve_factored(a, c, mm, d, ni);
    row[0] = lo_data;
    row[m - 1] = hi_data;
    bound[i] = std::max(std::abs(lo_data), std::abs(hi_data));
  });
  for (double b : bound) field_.data_bound = std::max(field_.data_bound, b);
}

void Solver::step() {
  SolutionField next = field_;
  transport(field_, next.f);
  if (cfg_.scheme == Scheme::viscous) diffuse_x(next.f);
  const double t_new = field_.t + problem_.dt;
  solve_velocity(next.f, t_new);
  next.data_bound = field_.data_bound;
  next.t = t_new;
  next.step = field_.step + 1;
  refresh_traces(next, t_new, next.step);
  field_ = std::move(next);
  if (cfg_.record_traces) history_.push_back(field_.trace);
}

void Solver::advance(int steps) {
  for (int n = 0; n < steps; ++n) step();
}

bool Solver::run_to_steady(double tol, double t_max) {
  while (field_.t < t_max - 0.5 * problem_.dt) {
    std::vector<double> prev = field_.f;
    step();
    double change = 0.0, size = 1.0;
    for (std::size_t k = 0; k < prev.size(); ++k) {
      change = std::max(change, std::abs(field_.f[k] - prev[k]));
      size = std::max(size, std::abs(field_.f[k]));
    }
    if (change / problem_.dt <= tol * size) return true;
  }
  return false;
}

// Ledger ---------------------------------------------------------------------

LedgerEntry energy_ledger(const SolutionField& before, const SolutionField& after,
                          const CoefficientField& k, double q) {
  const auto& vg = after.vgrid;
  const auto& xg = after.xgrid;
  const int nx = xg.size(), m = vg.size();
  for (int w = 0; w < 2; ++w)
    if (static_cast<int>(before.trace[w].size()) != m)
      throw Error(ErrorCode::missing_trace, "ledger needs the traces of the previous level");
  const double dt = after.t - before.t;
  const double hv = vg.h, hx = xg.h;
  const double t = after.t;
  auto phi = [q](double v) { return std::pow(1.0 + v * v, q); };
  auto dphi = [q](double v) { return 2.0 * q * v * std::pow(1.0 + v * v, q - 1.0); };

  LedgerEntry e;
  e.step = after.step;
  e.t = t;
  e.dt = dt;
  double e0 = 0.0, e1 = 0.0, m0 = 0.0, m1 = 0.0;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < m; ++j) {
      const double p = phi(vg.v[j]) * vg.w[j] * hx;
      e0 += p * before.at(i, j) * before.at(i, j);
      e1 += p * after.at(i, j) * after.at(i, j);
      m0 += vg.w[j] * hx * before.at(i, j);
      m1 += vg.w[j] * hx * after.at(i, j);
    }
  e.energy = e1;
  e.energy_change = e1 - e0;
  e.mass = m1;
  e.mass_change = m1 - m0;

  for (int w = 0; w < 2; ++w) {
    const auto wall = before.wall(w);
    for (int j = 0; j < m; ++j) {
      const double s = wall.normal * vg.v[j];
      const double g = before.trace[w][j];
      e.boundary += dt * vg.w[j] * s * phi(vg.v[j]) * g * g;
      e.mass_boundary_flux += dt * vg.w[j] * s * g;
    }
  }

  double diss = 0.0, rhs = 0.0;
  for (int i = 0; i < nx; ++i) {
    const double x = xg.x[i];
    for (int j = 0; j + 1 < m; ++j) {
      const double vf = 0.5 * (vg.v[j] + vg.v[j + 1]);
      const double fl = after.at(i, j), fr = after.at(i, j + 1);
      const double df = (fr - fl) / hv, ff = 0.5 * (fl + fr);
      const double a = k.a(t, x, vf);
      diss += 2.0 * hx * hv * a * phi(vf) * df * df;
      rhs -= 2.0 * hx * hv * a * dphi(vf) * ff * df;
      if (k.Bd) {
        const double bd = k.Bd(t, x, vf);
        rhs -= 2.0 * hx * hv * bd * ff * (phi(vf) * df + ff * dphi(vf));
      }
    }
    // velocity-box boundary terms of the integrations by parts
    const double fl = after.at(i, 0), fr = after.at(i, m - 1);
    const double dl = (after.at(i, 1) - fl) / hv, dr = (fr - after.at(i, m - 2)) / hv;
    const double vl = vg.v.front(), vr = vg.v.back();
    rhs += 2.0 * hx * (k.a(t, x, vr) * phi(vr) * fr * dr - k.a(t, x, vl) * phi(vl) * fl * dl);
    if (k.Bd)
      rhs += 2.0 * hx * (k.Bd(t, x, vr) * phi(vr) * fr * fr - k.Bd(t, x, vl) * phi(vl) * fl * fl);
    for (int j = 0; j < m; ++j) {
      const double v = vg.v[j];
      const double f = after.at(i, j);
      double d2;  // derivative of f^2
      if (j == 0)
        d2 = (after.at(i, 1) * after.at(i, 1) - f * f) / hv;
      else if (j == m - 1)
        d2 = (f * f - after.at(i, j - 1) * after.at(i, j - 1)) / hv;
      else
        d2 = (after.at(i, j + 1) * after.at(i, j + 1) - after.at(i, j - 1) * after.at(i, j - 1)) /
             (2.0 * hv);
      const double p = phi(v) * vg.w[j] * hx;
      rhs += p * (k.b(t, x, v) * d2 + 2.0 * k.zeroth(t, x, v) * f * f +
                  2.0 * k.source(t, x, v) * f);
    }
  }
  e.dissipation = dt * diss;
  e.rhs = dt * rhs;
  e.residual = e.energy_change + e.boundary + e.dissipation - e.rhs;
  return e;
}

// Mirror extension -----------------------------------------------------------

MirrorExtension mirror_extended_field(const SolutionField& field,
                                      const boundary::BoundarySpec& spec, int wall) {
  const bool specular =
      std::holds_alternative<boundary::Specular>(spec) ||
      (std::holds_alternative<boundary::DampedSpecular>(spec) &&
       std::get<boundary::DampedSpecular>(spec).a == 1.0);
  if (!specular)
    throw Error(ErrorCode::invalid_argument,
                "mirror extension needs the specular boundary condition, got " +
                    boundary::spec_name(spec));
  if (wall != 0 && wall != 1) throw Error(ErrorCode::invalid_argument, "wall must be 0 or 1");
  const int nx = field.xgrid.size(), m = field.vgrid.size();
  MirrorExtension ext;
  ext.xgrid = SpaceGrid::uniform(2.0 * field.xgrid.X, 2 * nx);
  ext.vgrid = field.vgrid;
  ext.f.assign(static_cast<std::size_t>(2 * nx) * m, 0.0);
  ext.interface_cell = nx;
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < m; ++j) {
      const double orig = field.at(i, j);
      const double refl = field.at(nx - 1 - i, field.vgrid.mirror(j));
      if (wall == 0) {
        ext.f[static_cast<std::size_t>(nx + i) * m + j] = orig;
        ext.f[static_cast<std::size_t>(i) * m + j] = refl;
      } else {
        ext.f[static_cast<std::size_t>(i) * m + j] = orig;
        ext.f[static_cast<std::size_t>(nx + i) * m + j] = refl;
      }
    }
  const int ib = wall == 0 ? 0 : nx - 1;
  const int in = wall == 0 ? std::min(1, nx - 1) : std::max(nx - 2, 0);
  auto wall_value = [&](int j) {
    if (ib == in) return field.at(ib, j);
    return 1.5 * field.at(ib, j) - 0.5 * field.at(in, j);
  };
  for (int j = 0; j < m; ++j)
    ext.interface_jump = std::max(
        ext.interface_jump, std::abs(wall_value(j) - wall_value(field.vgrid.mirror(j))));
  return ext;
}

CoefficientField reflect_coefficients(const CoefficientField& k, double wall_x) {
  CoefficientField r = k;
  const double two = 2.0 * wall_x;
  r.A = [k, two](double t, double x, double v) { return k.a(t, two - x, -v); };
  r.B = [k, two](double t, double x, double v) { return -k.b(t, two - x, -v); };
  r.c = [k, two](double t, double x, double v) { return k.zeroth(t, two - x, -v); };
  if (k.s) r.s = [k, two](double t, double x, double v) { return k.source(t, two - x, -v); };
  if (k.Bd) r.Bd = [k, two](double t, double x, double v) { return -k.bdiv(t, two - x, -v); };
  return r;
}

}  // namespace kfp
