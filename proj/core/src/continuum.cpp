#include "srf/continuum.hpp"

#include <algorithm>
#include <cmath>

#include "srf/error.hpp"

namespace srf {

namespace {

void check_grid(const ContinuumGrid& g) {
  const int n = static_cast<int>(g.rho.size());
  if (n < 5) throw SrfError(errc::config, "continuum grid needs at least 5 points");
  if (static_cast<int>(g.h.size()) != n - 1)
    throw SrfError(errc::config, "spacing count must be one less than point count");
  for (int i = 0; i < n; ++i)
    if (!(g.rho[i] > 0.0) || !std::isfinite(g.rho[i]))
      throw SrfError(errc::realizability, "profile value not positive", i + 1);
  for (int i = 0; i + 1 < n; ++i)
    if (!(g.h[i] > 0.0) || !std::isfinite(g.h[i]))
      throw SrfError(errc::realizability, "grid spacing not positive", i + 1);
}

struct PointDerivs {
  double d1, d2;
};

// Central quotients on an uneven pair of spacings; exact through quadratics.
PointDerivs central(double rm, double r0, double rp, double hm, double hp) {
  const double fwd = (rp - r0) / hp;
  const double bwd = (r0 - rm) / hm;
  return {(hm * fwd + hp * bwd) / (hm + hp), 2.0 * (fwd - bwd) / (hm + hp)};
}

// One-sided quadratic fit through (0, r0), (h1, r1), (h1 + h2, r2), giving
// the derivatives at the first point.
PointDerivs one_sided(double r0, double r1, double r2, double h1, double h2) {
  const double fwd1 = (r1 - r0) / h1;
  const double fwd2 = (r2 - r1) / h2;
  const double curv = 2.0 * (fwd2 - fwd1) / (h1 + h2);
  return {fwd1 - 0.5 * h1 * curv, curv};
}

}  // namespace

ContinuumGrid continuum_from_profile(const RadialProfile& profile, int n_levels, double a_min,
                                     double a_max) {
  if (n_levels < 5) throw SrfError(errc::config, "continuum grid needs at least 5 points");
  if (!(a_max > a_min)) throw SrfError(errc::config, "grid range must be nonempty");
  ContinuumGrid g;
  const double step = (a_max - a_min) / (n_levels - 1);
  g.rho.resize(n_levels);
  for (int i = 0; i < n_levels; ++i) g.rho[i] = profile.rho(a_min + step * i);
  g.h.assign(n_levels - 1, step);
  check_grid(g);
  return g;
}

ContinuumGrid continuum_from_lattice(const LatticeState& st) {
  ContinuumGrid g{st.a, st.rho, st.t};
  check_grid(g);
  return g;
}

ContinuumRhs continuum_rhs(const ContinuumGrid& g) {
  check_grid(g);
  const int n = static_cast<int>(g.rho.size());
  std::vector<PointDerivs> d(n);
  d[0] = one_sided(g.rho[0], g.rho[1], g.rho[2], g.h[0], g.h[1]);
  for (int i = 1; i + 1 < n; ++i)
    d[i] = central(g.rho[i - 1], g.rho[i], g.rho[i + 1], g.h[i - 1], g.h[i]);
  {
    PointDerivs e = one_sided(g.rho[n - 1], g.rho[n - 2], g.rho[n - 3], g.h[n - 2], g.h[n - 3]);
    e.d1 = -e.d1;  // fitted with distance running backwards
    d[n - 1] = e;
  }

  ContinuumRhs out;
  out.rho_dot.resize(n);
  std::vector<double> q(n);
  for (int i = 0; i < n; ++i) {
    const double rho = g.rho[i];
    out.rho_dot[i] = d[i].d2 + d[i].d1 * d[i].d1 / rho - 1.0 / rho;
    q[i] = 2.0 * d[i].d2 / rho;
  }
  out.h_dot.resize(n - 1);
  for (int i = 0; i + 1 < n; ++i) out.h_dot[i] = g.h[i] * 0.5 * (q[i] + q[i + 1]);
  return out;
}

ContinuumTrajectory integrate_continuum(const ContinuumGrid& g0, const FlowConfig& cfg) {
  cfg.validate();
  check_grid(g0);
  const int n = static_cast<int>(g0.rho.size());

  std::vector<double> y0(2 * n - 1);
  std::copy(g0.rho.begin(), g0.rho.end(), y0.begin());
  std::copy(g0.h.begin(), g0.h.end(), y0.begin() + n);

  auto unpack = [&](const std::vector<double>& y, double t) {
    ContinuumGrid g;
    g.rho.assign(y.begin(), y.begin() + n);
    g.h.assign(y.begin() + n, y.end());
    g.t = g0.t + t;
    return g;
  };

  auto rhs = [&](double, const std::vector<double>& y, std::vector<double>& yd) {
    for (double v : y)
      if (!(v > 0.0)) throw SrfError(errc::realizability, "grid value left the positive cone");
    std::vector<double> re, ae;
    {
      std::vector<double> rho(y.begin(), y.begin() + n);
      std::vector<double> h(y.begin() + n, y.end());
      detail::extend_ghosts(rho, h, cfg.closure, re, ae);
    }
    auto x = [&](int i) { return re[i + 1]; };
    auto b = [&](int j) { return ae[j + 1]; };
    yd.resize(2 * n - 1);
    std::vector<double> q(n);
    for (int i = 0; i < n; ++i) {
      const PointDerivs d = central(x(i - 1), x(i), x(i + 1), b(i - 1), b(i));
      yd[i] = d.d2 + d.d1 * d.d1 / x(i) - 1.0 / x(i);
      q[i] = 2.0 * d.d2 / x(i);
    }
    for (int i = 0; i + 1 < n; ++i) yd[n + i] = b(i) * 0.5 * (q[i] + q[i + 1]);
  };

  auto diag = [&](const std::vector<double>& y) {
    detail::FlatDiagnostics d{};
    int gmin = 0, w = -1;
    for (int i = 1; i < n; ++i)
      if (y[i] < y[gmin]) gmin = i;
    for (int i = 1; i + 1 < n; ++i)
      if (y[i] <= y[i - 1] && y[i] <= y[i + 1] && (w < 0 || y[i] < y[w])) w = i;
    d.has_waist = w >= 0;
    const int idx = w >= 0 ? w : gmin;
    d.rho_min = y[idx];
    d.rho_global = y[gmin];
    d.min_rho_index = idx + 1;
    d.min_a = *std::min_element(y.begin() + n, y.end());

    std::vector<double> re, ae;
    std::vector<double> rho(y.begin(), y.begin() + n);
    std::vector<double> h(y.begin() + n, y.end());
    detail::extend_ghosts(rho, h, cfg.closure, re, ae);
    double m = 0.0;
    for (int i = 0; i < n; ++i) {
      const PointDerivs pd = central(re[i], re[i + 1], re[i + 2], ae[i], ae[i + 1]);
      m = std::max(m, std::fabs(pd.d2 / re[i + 1]));
      m = std::max(m, std::fabs((1.0 - pd.d1 * pd.d1) / (re[i + 1] * re[i + 1])));
    }
    d.max_K = m;
    return d;
  };

  auto ft = detail::integrate_flat(y0, cfg, rhs, diag);

  ContinuumTrajectory out;
  out.samples = std::move(ft.samples);
  out.dumps.reserve(ft.dumps.size());
  for (const auto& [td, yd] : ft.dumps) out.dumps.push_back(unpack(yd, td));
  out.final_grid = unpack(ft.y_final, ft.t_final);
  out.stop = ft.stop;
  out.stop_message = std::move(ft.stop_message);
  out.T_est = ft.T_est;
  out.waist_applicable = ft.waist_applicable;
  return out;
}

}  // namespace srf
