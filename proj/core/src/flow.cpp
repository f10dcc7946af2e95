#include "srf/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "srf/banded.hpp"
#include "srf/dual.hpp"
#include "srf/error.hpp"

namespace srf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_state(const LatticeState& st) {
  const int n = st.n_levels();
  if (n < 5) throw SrfError(errc::config, "lattice needs at least 5 levels");
  if (static_cast<int>(st.a.size()) != n - 1)
    throw SrfError(errc::config, "axial edge count must be n_levels - 1");
  for (int i = 0; i < n; ++i)
    if (!(st.rho[i] > 0.0) || !std::isfinite(st.rho[i]))
      throw SrfError(errc::realizability, "cross-section radius not positive", i + 1);
  for (int i = 0; i + 1 < n; ++i)
    if (!(st.a[i] > 0.0) || !std::isfinite(st.a[i]))
      throw SrfError(errc::realizability, "axial edge not positive", i + 1);
}

// Double-ghost extension used by the leading-order closed forms: the sigma
// equation on the outermost physical bands reaches two levels past each end.
struct Ghost2 {
  std::vector<double> x;  // rho, index shifted by +2
  std::vector<double> b;  // a, band index shifted by +2
};

Ghost2 extend_ghosts2(const std::vector<double>& rho, const std::vector<double>& a, Closure cl) {
  const int n = static_cast<int>(rho.size());
  Ghost2 g;
  g.x.assign(n + 4, 0.0);
  g.b.assign(n + 3, 0.0);
  std::copy(rho.begin(), rho.end(), g.x.begin() + 2);
  std::copy(a.begin(), a.end(), g.b.begin() + 2);
  g.b[1] = a[0];
  g.b[0] = a[1];
  g.b[n + 1] = a[n - 2];
  g.b[n + 2] = a[n - 3];
  if (cl == Closure::reflective) {
    g.x[1] = rho[1];
    g.x[0] = rho[2];
    g.x[n + 2] = rho[n - 2];
    g.x[n + 3] = rho[n - 3];
  } else {
    g.x[1] = rho[0] - a[0];
    g.x[0] = g.x[1] - a[1];
    g.x[n + 2] = rho[n - 1] - a[n - 2];
    g.x[n + 3] = g.x[n + 2] - a[n - 3];
    if (!(g.x[0] > 0.0) || !(g.x[1] > 0.0) || !(g.x[n + 2] > 0.0) || !(g.x[n + 3] > 0.0))
      throw SrfError(errc::realizability, "pole closure ghost radius not positive");
  }
  return g;
}

ReducedRhs zeroth_rhs(const LatticeState& st, Closure cl) {
  const int n = st.n_levels();
  const Ghost2 g = extend_ghosts2(st.rho, st.a, cl);
  auto x = [&](int i) { return g.x[i + 2]; };
  auto b = [&](int j) { return g.b[j + 2]; };
  auto gf = [&](int i) { return b(i) * (x(i) - x(i - 1)) + b(i - 1) * (x(i) - x(i + 1)); };
  auto df = [&](int i) {
    return b(i - 1) * (x(i - 1) + 3.0 * x(i)) + b(i) * (3.0 * x(i) + x(i + 1));
  };

  // q[i+1] = d(ln alpha)/dt at level i, for i = -1 .. n
  std::vector<double> q(n + 2);
  for (int i = -1; i <= n; ++i) q[i + 1] = -16.0 * gf(i) / (b(i - 1) * b(i) * df(i));

  // r(j) = d(ln sigma)/dt on band j, for j = -1 .. n-1
  auto r = [&](int j) {
    const double pair = x(j) + x(j + 1);
    const double lobe = (x(j) * q[j + 1] + x(j + 1) * q[j + 2]) / (2.0 * pair);
    const double dr = x(j) - x(j + 1);
    return lobe - 4.0 * (b(j) * b(j) - dr * dr) / (b(j) * b(j) * pair * pair);
  };

  ReducedRhs out;
  out.q.assign(q.begin() + 1, q.end() - 1);
  out.rho_dot.resize(n);
  for (int i = 0; i < n; ++i) out.rho_dot[i] = st.rho[i] * 0.5 * (r(i - 1) + r(i));
  out.a_dot.resize(n - 1);
  for (int i = 0; i + 1 < n; ++i) out.a_dot[i] = st.a[i] * 0.5 * (out.q[i] + out.q[i + 1]);
  return out;
}

ReducedRhs continuum_limit_rhs(const LatticeState& st, Closure cl) {
  const int n = st.n_levels();
  std::vector<double> re, ae;
  detail::extend_ghosts(st.rho, st.a, cl, re, ae);
  auto x = [&](int i) { return re[i + 1]; };
  auto b = [&](int j) { return ae[j + 1]; };

  ReducedRhs out;
  out.q.resize(n);
  out.rho_dot.resize(n);
  for (int i = 0; i < n; ++i) {
    const double fwd = (x(i + 1) - x(i)) / b(i);
    const double bwd = (x(i) - x(i - 1)) / b(i - 1);
    const double d2 = 2.0 * (fwd - bwd) / (b(i - 1) + b(i));
    out.q[i] = 2.0 * d2 / x(i);
    out.rho_dot[i] = d2 + fwd * bwd / x(i) - 1.0 / x(i);
  }
  out.a_dot.resize(n - 1);
  for (int i = 0; i + 1 < n; ++i) out.a_dot[i] = st.a[i] * 0.5 * (out.q[i] + out.q[i + 1]);
  return out;
}

// Velocity recovery for prescribed rates: each dual edge is an explicit
// function of the neighboring lengths, so d/dt of it equals rate * value.
// Rows come in (alpha_0, sigma_0, alpha_1, ...) order, giving bandwidth 2.
VelocityField solve_full(const LatticeState& st, Closure cl, const std::vector<double>& rate_a,
                         const std::vector<double>& rate_s) {
  const int n = st.n_levels();
  std::vector<double> re, ae;
  detail::extend_ghosts(st.rho, st.a, cl, re, ae);
  const auto f = detail::edge_factors<double>(st.xi, st.cross_section);

  const int m = 2 * n - 1;
  BandedMatrix J(m, 2, 2);
  std::vector<double> rhs(m, 0.0);

  // Ghost unknowns fold onto physical columns per the closure rule.
  using Targets = std::array<std::pair<int, double>, 2>;
  auto rho_cols = [&](int lvl) -> Targets {
    if (lvl < 0) {
      if (cl == Closure::reflective) return {{{2, 1.0}, {0, 0.0}}};
      return {{{0, 1.0}, {1, -1.0}}};
    }
    if (lvl >= n) {
      if (cl == Closure::reflective) return {{{2 * (n - 2), 1.0}, {0, 0.0}}};
      return {{{2 * (n - 1), 1.0}, {2 * n - 3, -1.0}}};
    }
    return {{{2 * lvl, 1.0}, {0, 0.0}}};
  };
  auto a_cols = [&](int band) -> Targets {
    const int c = band < 0 ? 0 : (band >= n - 1 ? n - 2 : band);
    return {{{2 * c + 1, 1.0}, {0, 0.0}}};
  };

  using D5 = Dual<double, 5>;
  for (int i = 0; i < n; ++i) {
    const D5 rm = D5::var(re[i], 0);
    const D5 rc = D5::var(re[i + 1], 1);
    const D5 rp = D5::var(re[i + 2], 2);
    const D5 am = D5::var(ae[i], 3);
    const D5 ap = D5::var(ae[i + 1], 4);
    const auto lo = detail::make_block(rm * f.s, rm * f.s, rm * f.sbar, rc / rm, am);
    const auto up = detail::make_block(rc * f.s, rc * f.s, rc * f.sbar, rp / rc, ap);
    const D5 alpha = lo.alpha_top + up.alpha_base;

    const int row = 2 * i;
    auto add = [&](const Targets& tg, double grad) {
      if (grad == 0.0) return;
      for (const auto& [col, w] : tg)
        if (w != 0.0) J.at(row, col) += w * grad;
    };
    add(rho_cols(i - 1), alpha.d[0]);
    add(rho_cols(i), alpha.d[1]);
    add(rho_cols(i + 1), alpha.d[2]);
    add(a_cols(i - 1), alpha.d[3]);
    add(a_cols(i), alpha.d[4]);
    rhs[row] = rate_a[i] * alpha.v;
  }

  using D3 = Dual<double, 3>;
  for (int j = 0; j + 1 < n; ++j) {
    const D3 rl = D3::var(st.rho[j], 0);
    const D3 rh = D3::var(st.rho[j + 1], 1);
    const D3 ab = D3::var(st.a[j], 2);
    const auto blk = detail::make_block(rl * f.s, rl * f.s, rl * f.sbar, rh / rl, ab);
    const D3 sig = blk.sigma_half[0] + blk.sigma_half[0];

    const int row = 2 * j + 1;
    J.at(row, 2 * j) += sig.d[0];
    J.at(row, 2 * j + 2) += sig.d[1];
    J.at(row, 2 * j + 1) += sig.d[2];
    rhs[row] = rate_s[j] * sig.v;
  }

  J.factor();
  const double pr = J.pivot_ratio();
  if (!(pr < 1e14)) throw SrfError(errc::singular_system, "velocity system ill-conditioned");
  J.solve(rhs);

  VelocityField out;
  out.rho_dot.resize(n);
  out.a_dot.resize(n - 1);
  for (int i = 0; i < n; ++i) out.rho_dot[i] = rhs[2 * i];
  for (int i = 0; i + 1 < n; ++i) out.a_dot[i] = rhs[2 * i + 1];
  out.pivot_ratio = pr;
  return out;
}

double clamp(double v, double lo, double hi) { return std::min(std::max(v, lo), hi); }

// Windowed least-squares extrapolation of rho_min^2 to zero, over the most
// recent tenth of the samples (at least two). Centered sums keep the fit
// stable when the window times are nearly equal close to the pinch.
struct RunningFit {
  std::vector<double> ts, ms;

  void push(double t, double rho_min) {
    ts.push_back(t);
    ms.push_back(rho_min * rho_min);
  }

  std::pair<double, double> estimate() const {  // {T_est, ratio}
    const int k = static_cast<int>(ts.size());
    if (k < 2) return {kNaN, kNaN};
    const int w = std::max(2, k / 10);
    const int lo = k - w;
    double tbar = 0.0, mbar = 0.0;
    for (int i = lo; i < k; ++i) {
      tbar += ts[i];
      mbar += ms[i];
    }
    tbar /= w;
    mbar /= w;
    double sxx = 0.0, sxy = 0.0;
    for (int i = lo; i < k; ++i) {
      const double dx = ts[i] - tbar;
      sxx += dx * dx;
      sxy += dx * (ms[i] - mbar);
    }
    if (!(sxx > 0.0)) return {kNaN, kNaN};
    const double slope = sxy / sxx;
    if (!(slope < 0.0)) return {kNaN, kNaN};
    const double T = tbar - mbar / slope;
    if (!(T > ts.back())) return {kNaN, kNaN};
    return {T, ms.back() / (T - ts.back())};
  }
};

}  // namespace

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::none: return "none";
    case StopReason::max_time: return "max_time";
    case StopReason::min_rho: return "min_rho";
    case StopReason::realizability: return "realizability";
    case StopReason::singular_system: return "singular_system";
    case StopReason::non_finite: return "non_finite";
    case StopReason::dt_underflow: return "dt_underflow";
  }
  return "unknown";
}

void FlowConfig::validate() const {
  if (!(dt_init > 0.0) || !std::isfinite(dt_init))
    throw SrfError(errc::config, "dt_init must be positive");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw SrfError(errc::config, "integration tolerances must be positive");
  if (!(max_time >= 0.0) || !std::isfinite(max_time))
    throw SrfError(errc::config, "max_time must be nonnegative and finite");
  if (!(min_rho_factor > 0.0)) throw SrfError(errc::config, "min_rho_factor must be positive");
  if (sample_every < 1) throw SrfError(errc::config, "sample_every must be at least 1");
  if (!(monitor_delta >= 0.0)) throw SrfError(errc::config, "monitor_delta must be nonnegative");
  if (dump_states_every < 0)
    throw SrfError(errc::config, "dump_states_every must be nonnegative");
}

double ricci_alpha(const LatticeState& st, int i) {
  const DualVertexData v = dual_vertex_data(st, i);
  return -4.0 * v.K_s * v.f_alpha_s - 2.0 * v.K_sbar * v.f_alpha_sbar;
}

double ricci_sigma(const LatticeState& st, int i) {
  if (i >= st.n_levels() - 1)
    throw SrfError(errc::config, "sigma rate needs interior levels i and i+1", i);
  const DualVertexData v = dual_vertex_data(st, i);
  const DualVertexData w = dual_vertex_data(st, i + 1);
  return -2.0 * v.K_s * v.f_sigma_s - 2.0 * w.K_s * v.f_sigma_splus -
         2.0 * (v.K_a + v.K_ahat) * v.f_sigma_a;
}

ReducedRhs reduced_rhs(const LatticeState& st, FlowMode mode, Closure closure) {
  check_state(st);
  if (mode == FlowMode::zeroth_order) return zeroth_rhs(st, closure);
  if (mode == FlowMode::continuum_limit) return continuum_limit_rhs(st, closure);
  throw SrfError(errc::config, "reduced_rhs covers zeroth_order and continuum_limit modes");
}

VelocityField assemble_velocity_system(const LatticeState& st,
                                       const std::vector<double>& rate_alpha,
                                       const std::vector<double>& rate_sigma, Closure closure) {
  check_state(st);
  if (static_cast<int>(rate_alpha.size()) != st.n_levels() ||
      static_cast<int>(rate_sigma.size()) != st.n_levels() - 1)
    throw SrfError(errc::config, "rate vectors must match level and band counts");
  return solve_full(st, closure, rate_alpha, rate_sigma);
}

VelocityField flow_velocities(const LatticeState& st, FlowMode mode, Closure closure) {
  check_state(st);
  if (mode != FlowMode::full) {
    ReducedRhs r = reduced_rhs(st, mode, closure);
    return VelocityField{std::move(r.rho_dot), std::move(r.a_dot), 0.0};
  }
  const int n = st.n_levels();
  std::vector<double> re, ae;
  detail::extend_ghosts(st.rho, st.a, closure, re, ae);
  const auto ev = detail::evaluate_ext(re, ae, st.xi, st.cross_section);
  std::vector<double> rs(n - 1);
  for (int j = 0; j + 1 < n; ++j) rs[j] = ev.rate_sigma[j + 1];
  return solve_full(st, closure, ev.rate_alpha, rs);
}

namespace detail {

void extend_ghosts(const std::vector<double>& rho, const std::vector<double>& a, Closure closure,
                   std::vector<double>& rho_ext, std::vector<double>& a_ext) {
  const int n = static_cast<int>(rho.size());
  if (n < 5 || static_cast<int>(a.size()) != n - 1)
    throw SrfError(errc::config, "state arrays inconsistent");
  rho_ext.assign(n + 2, 0.0);
  a_ext.assign(n + 1, 0.0);
  std::copy(rho.begin(), rho.end(), rho_ext.begin() + 1);
  std::copy(a.begin(), a.end(), a_ext.begin() + 1);
  a_ext[0] = a[0];
  a_ext[n] = a[n - 2];
  if (closure == Closure::reflective) {
    rho_ext[0] = rho[1];
    rho_ext[n + 1] = rho[n - 2];
  } else {
    rho_ext[0] = rho[0] - a[0];
    rho_ext[n + 1] = rho[n - 1] - a[n - 2];
    if (!(rho_ext[0] > 0.0) || !(rho_ext[n + 1] > 0.0))
      throw SrfError(errc::realizability, "pole closure ghost radius not positive");
  }
}

FlatTrajectory integrate_flat(const std::vector<double>& y0, const FlowConfig& cfg,
                              const std::function<void(double, const std::vector<double>&,
                                                       std::vector<double>&)>& rhs,
                              const std::function<FlatDiagnostics(const std::vector<double>&)>&
                                  diagnostics) {
  // Dormand-Prince 4(5) embedded pair.
  static constexpr double A2[] = {1.0 / 5};
  static constexpr double A3[] = {3.0 / 40, 9.0 / 40};
  static constexpr double A4[] = {44.0 / 45, -56.0 / 15, 32.0 / 9};
  static constexpr double A5[] = {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729};
  static constexpr double A6[] = {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
                                  -5103.0 / 18656};
  static constexpr const double* AROWS[] = {A2, A3, A4, A5, A6};
  static constexpr double B5[] = {35.0 / 384,    0.0,       500.0 / 1113,
                                  125.0 / 192,   -2187.0 / 6784, 11.0 / 84};
  static constexpr double ERR[] = {71.0 / 57600, 0.0,       -71.0 / 16695,      71.0 / 1920,
                                   -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
  static constexpr double CS[] = {1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0};

  const int dim = static_cast<int>(y0.size());
  const bool adaptive = cfg.integrator == Integrator::rk45;

  FlatTrajectory out;
  std::vector<double> y = y0;
  double t = 0.0;

  FlatDiagnostics d = diagnostics(y);
  const double rho_floor = cfg.min_rho_factor * d.rho_min;
  RunningFit fit;
  bool waist_all = true;

  auto record = [&](const FlatDiagnostics& dd) {
    fit.push(t, dd.rho_min);
    const auto [T, ratio] = fit.estimate();
    out.samples.push_back(
        TrajectorySample{t, dd.rho_min, T, ratio, dd.max_K, dd.min_a, dd.min_rho_index});
    waist_all = waist_all && dd.has_waist;
  };
  record(d);
  if (cfg.dump_states_every > 0) out.dumps.emplace_back(t, y);

  StopReason stop = StopReason::none;
  std::string msg;
  if (d.rho_min <= rho_floor) {
    stop = StopReason::min_rho;
  } else if (t >= cfg.max_time) {
    stop = StopReason::max_time;
  }

  std::array<std::vector<double>, 7> k;
  for (auto& v : k) v.resize(dim);
  std::vector<double> ytmp(dim), ynew(dim);
  double dt = cfg.dt_init;
  long accepted = 0;

  while (stop == StopReason::none) {
    const double remaining = cfg.max_time - t;
    double h = std::min(dt, remaining);
    const bool clipped = h == remaining;
    double err = 0.0;
    bool step_done = false;
    bool saw_unrealizable = false;

    while (!step_done && stop == StopReason::none) {
      if (!(h > 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, t))) {
        stop = saw_unrealizable ? StopReason::realizability : StopReason::dt_underflow;
        if (msg.empty()) msg = "step size underflow";
        break;
      }
      try {
        if (!adaptive) {
          rhs(t, y, k[0]);
          for (int c = 0; c < dim; ++c) ynew[c] = y[c] + h * k[0][c];
          err = 0.0;
          step_done = true;
        } else {
          rhs(t, y, k[0]);
          for (int s = 1; s <= 5; ++s) {
            for (int c = 0; c < dim; ++c) {
              double acc = 0.0;
              for (int j = 0; j < s; ++j) acc += AROWS[s - 1][j] * k[j][c];
              ytmp[c] = y[c] + h * acc;
            }
            rhs(t + CS[s - 1] * h, ytmp, k[s]);
          }
          for (int c = 0; c < dim; ++c) {
            double acc = 0.0;
            for (int j = 0; j < 6; ++j) acc += B5[j] * k[j][c];
            ynew[c] = y[c] + h * acc;
          }
          rhs(t + h, ynew, k[6]);
          double sumsq = 0.0;
          for (int c = 0; c < dim; ++c) {
            double e = 0.0;
            for (int j = 0; j < 7; ++j) e += ERR[j] * k[j][c];
            const double scale =
                cfg.abs_tol + cfg.rel_tol * std::max(std::fabs(y[c]), std::fabs(ynew[c]));
            const double r = h * e / scale;
            sumsq += r * r;
          }
          err = std::sqrt(sumsq / dim);
          if (!std::isfinite(err)) {
            saw_unrealizable = true;
            h *= 0.5;
          } else if (err <= 1.0)
            step_done = true;
          else
            h *= clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
        }
        if (step_done) {
          for (int c = 0; c < dim; ++c) {
            if (!std::isfinite(ynew[c])) {
              stop = StopReason::non_finite;
              msg = "non-finite state component";
              break;
            }
          }
        }
      } catch (const SrfError& e) {
        if (e.code() == errc::realizability || e.code() == errc::domain) {
          if (!adaptive) {
            stop = StopReason::realizability;
            msg = e.what();
          } else {
            saw_unrealizable = true;
            msg = e.what();
            h *= 0.5;
          }
        } else if (e.code() == errc::singular_system) {
          stop = StopReason::singular_system;
          msg = e.what();
        } else {
          throw;
        }
      }
    }
    if (stop != StopReason::none) break;

    t = (clipped && h == remaining) ? cfg.max_time : t + h;
    y.swap(ynew);
    ++accepted;
    if (adaptive) {
      const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      dt = h * clamp(grow, 0.2, 5.0);
    }

    try {
      d = diagnostics(y);
    } catch (const SrfError& e) {
      stop = e.code() == errc::singular_system ? StopReason::singular_system
                                               : StopReason::realizability;
      msg = e.what();
      break;
    }
    bool sampled = false;
    if (accepted % cfg.sample_every == 0) {
      record(d);
      sampled = true;
    }
    if (cfg.dump_states_every > 0 && accepted % cfg.dump_states_every == 0)
      out.dumps.emplace_back(t, y);

    if (d.rho_min <= rho_floor)
      stop = StopReason::min_rho;
    else if (t >= cfg.max_time)
      stop = StopReason::max_time;
    if (stop != StopReason::none && !sampled) record(d);
  }

  if (out.samples.back().t != t) {
    try {
      record(diagnostics(y));
    } catch (const SrfError&) {
    }
  }

  out.y_final = std::move(y);
  out.t_final = t;
  out.stop = stop;
  out.stop_message = std::move(msg);
  out.T_est = out.samples.back().T_est;
  out.waist_applicable = waist_all;
  return out;
}

}  // namespace detail

namespace {

// Waist scan: deepest interior local minimum (plateaus allowed), leftmost on
// ties; without one, fall back to the global minimum.
void scan_profile(const std::vector<double>& rho, int n, detail::FlatDiagnostics& d) {
  int gmin = 0;
  for (int i = 1; i < n; ++i)
    if (rho[i] < rho[gmin]) gmin = i;
  int w = -1;
  for (int i = 1; i + 1 < n; ++i)
    if (rho[i] <= rho[i - 1] && rho[i] <= rho[i + 1] && (w < 0 || rho[i] < rho[w])) w = i;
  d.has_waist = w >= 0;
  const int idx = w >= 0 ? w : gmin;
  d.rho_min = rho[idx];
  d.rho_global = rho[gmin];
  d.min_rho_index = idx + 1;
}

double max_curvature(const LatticeState& st, FlowMode mode, Closure cl) {
  const int n = st.n_levels();
  double m = 0.0;
  if (mode == FlowMode::full) {
    std::vector<double> re, ae;
    detail::extend_ghosts(st.rho, st.a, cl, re, ae);
    const auto ev = detail::evaluate_ext(re, ae, st.xi, st.cross_section);
    for (int i = 0; i < n; ++i)
      m = std::max(m, std::max(std::fabs(ev.K_s[i]), std::fabs(ev.K_sbar[i])));
    for (int b = 1; b < n; ++b)
      m = std::max(m, std::max(std::fabs(ev.K_a[b]), std::fabs(ev.K_ahat[b])));
    return m;
  }
  if (mode == FlowMode::zeroth_order) {
    const Ghost2 g = extend_ghosts2(st.rho, st.a, cl);
    auto x = [&](int i) { return g.x[i + 2]; };
    auto b = [&](int j) { return g.b[j + 2]; };
    for (int i = 0; i < n; ++i) {
      const double gf = b(i) * (x(i) - x(i - 1)) + b(i - 1) * (x(i) - x(i + 1));
      const double df = b(i - 1) * (x(i - 1) + 3.0 * x(i)) + b(i) * (3.0 * x(i) + x(i + 1));
      m = std::max(m, std::fabs(8.0 * gf / (b(i - 1) * b(i) * df)));
    }
    for (int j = 0; j + 1 < n; ++j) {
      const double dr = x(j) - x(j + 1);
      const double pair = x(j) + x(j + 1);
      m = std::max(m, std::fabs(4.0 * (b(j) * b(j) - dr * dr) / (b(j) * b(j) * pair * pair)));
    }
    return m;
  }
  std::vector<double> re, ae;
  detail::extend_ghosts(st.rho, st.a, cl, re, ae);
  auto x = [&](int i) { return re[i + 1]; };
  auto b = [&](int j) { return ae[j + 1]; };
  for (int i = 0; i < n; ++i) {
    const double fwd = (x(i + 1) - x(i)) / b(i);
    const double bwd = (x(i) - x(i - 1)) / b(i - 1);
    const double d2 = 2.0 * (fwd - bwd) / (b(i - 1) + b(i));
    m = std::max(m, std::fabs(d2 / x(i)));
    m = std::max(m, std::fabs((1.0 - fwd * bwd) / (x(i) * x(i))));
  }
  return m;
}

}  // namespace

FlowTrajectory integrate(const LatticeState& st0, const FlowConfig& cfg) {
  cfg.validate();
  check_state(st0);
  const int n = st0.n_levels();

  std::vector<double> y0(2 * n - 1);
  std::copy(st0.rho.begin(), st0.rho.end(), y0.begin());
  std::copy(st0.a.begin(), st0.a.end(), y0.begin() + n);

  LatticeState proto = st0;
  auto unpack = [&](const std::vector<double>& y, double t) {
    LatticeState s = proto;
    s.rho.assign(y.begin(), y.begin() + n);
    s.a.assign(y.begin() + n, y.end());
    s.t = st0.t + t;
    return s;
  };

  auto rhs = [&](double, const std::vector<double>& y, std::vector<double>& yd) {
    for (double v : y)
      if (!(v > 0.0)) throw SrfError(errc::realizability, "edge length left the positive cone");
    LatticeState s = proto;
    s.rho.assign(y.begin(), y.begin() + n);
    s.a.assign(y.begin() + n, y.end());
    const VelocityField v = flow_velocities(s, cfg.mode, cfg.closure);
    yd.resize(2 * n - 1);
    std::copy(v.rho_dot.begin(), v.rho_dot.end(), yd.begin());
    std::copy(v.a_dot.begin(), v.a_dot.end(), yd.begin() + n);
  };

  auto diag = [&](const std::vector<double>& y) {
    detail::FlatDiagnostics d{};
    std::vector<double> rho(y.begin(), y.begin() + n);
    scan_profile(rho, n, d);
    d.min_a = *std::min_element(y.begin() + n, y.end());
    LatticeState s = proto;
    s.rho = std::move(rho);
    s.a.assign(y.begin() + n, y.end());
    d.max_K = max_curvature(s, cfg.mode, cfg.closure);
    return d;
  };

  auto ft = detail::integrate_flat(y0, cfg, rhs, diag);

  FlowTrajectory out;
  out.samples = std::move(ft.samples);
  out.dumps.reserve(ft.dumps.size());
  for (const auto& [td, yd] : ft.dumps) out.dumps.push_back(unpack(yd, td));
  out.final_state = unpack(ft.y_final, ft.t_final);
  out.stop = ft.stop;
  out.stop_message = std::move(ft.stop_message);
  out.T_est = ft.T_est;
  out.waist_applicable = ft.waist_applicable;
  return out;
}

MonitorResult monitor_waist_bound(const FlowTrajectory& traj, double delta) {
  MonitorResult r;
  r.T_est = traj.T_est;
  r.applicable = traj.waist_applicable && traj.samples.size() >= 2;
  if (r.applicable) {
    const double T = traj.T_est;
    const double t_last = traj.samples.back().t;
    // without a finite estimate ahead of the last sample there is no window
    // to check, which is different from checking it and failing
    if (!std::isfinite(T) || !(T > t_last)) r.applicable = false;
  }
  if (!r.applicable) return r;
  const double T = traj.T_est;
  const double t_last = traj.samples.back().t;
  const double width = T - t_last;
  for (const auto& s : traj.samples) {
    const double tau = T - s.t;
    if (tau > 10.0 * width * (1.0 + 1e-12)) continue;
    r.ratios.push_back(s.rho_min * s.rho_min / tau);
  }
  r.pass = !r.ratios.empty();
  for (const double q : r.ratios)
    if (!(q >= 1.0 - delta && q <= 2.0 + delta)) r.pass = false;
  return r;
}

}  // namespace srf
