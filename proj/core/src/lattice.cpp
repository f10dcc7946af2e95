#include "srf/lattice.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace srf {

namespace detail {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

template <class T>
LatticeEvalT<T> evaluate_ext(const std::vector<T>& rho_ext, const std::vector<T>& a_ext,
                             double xi, CrossSection cs) {
  const int n = static_cast<int>(rho_ext.size()) - 2;
  if (n < 2 || static_cast<int>(a_ext.size()) != n + 1)
    throw SrfError(errc::domain, "ghost-extended arrays are inconsistent");
  for (const T& r : rho_ext)
    if (!(value_of(r) > 0.0))
      throw SrfError(errc::realizability, "non-positive radius in extended state");
  const auto f = edge_factors(T(xi), cs);

  std::vector<BandEval<T>> bands;
  bands.reserve(n + 1);
  for (int b = 0; b <= n; ++b)  // entry b is band b-1 (levels b-1 .. b in ghost offsets)
    bands.push_back(make_band(rho_ext[b], rho_ext[b + 1], a_ext[b], f));

  LatticeEvalT<T> ev;
  for (auto* v : {&ev.eps_s, &ev.star_s, &ev.K_s, &ev.eps_sbar, &ev.star_sbar, &ev.K_sbar,
                  &ev.alpha, &ev.f_alpha_s, &ev.f_alpha_sbar, &ev.rate_alpha})
    v->assign(n, T(0));
  for (auto* v : {&ev.eps_a, &ev.star_a, &ev.K_a, &ev.eps_ahat, &ev.star_ahat, &ev.K_ahat,
                  &ev.sigma, &ev.f_sigma_s, &ev.f_sigma_splus, &ev.f_sigma_a})
    v->assign(n + 1, T(0));
  ev.rate_sigma.assign(n + 1, T(std::numeric_limits<double>::quiet_NaN()));

  const T two_pi = T(2) * T(kPi);
  for (int b = 0; b <= n; ++b) {
    const auto& B = bands[b];
    ev.eps_a[b] = two_pi - T(6) * B.th_central.axial[0];
    ev.star_a[b] = T(6) * B.central.kite_axial[0];
    ev.K_a[b] = ev.eps_a[b] / ev.star_a[b];
    ev.eps_ahat[b] = two_pi - T(2) * B.th_central.axial[1] - T(2) * B.th_chord.axial[1] -
                     T(2) * B.th_outer.axial[0];
    ev.star_ahat[b] = T(2) * B.central.kite_axial[1] + T(2) * B.chord.kite_axial[1] +
                      T(2) * B.outer.kite_axial[0];
    ev.K_ahat[b] = ev.eps_ahat[b] / ev.star_ahat[b];
    ev.sigma[b] = T(2) * B.central.sigma_half[0];

    const T s = rho_ext[b] * f.s, sp = rho_ext[b + 1] * f.s;
    const T az = a_ext[b];
    const T spread = T(4) * az * az - sq(s - sp);
    ev.f_sigma_s[b] = s * (T(2) * az * az - s * (s - sp)) / ((s + sp) * spread);
    ev.f_sigma_a[b] = az * az / spread;
    // complement keeps the decomposition identity exact in floating point
    ev.f_sigma_splus[b] = T(1) - ev.f_sigma_s[b] - T(2) * ev.f_sigma_a[b];
  }
  for (int i = 0; i < n; ++i) {
    const auto& lo = bands[i];
    const auto& up = bands[i + 1];
    ev.eps_s[i] = two_pi - T(2) * up.th_central.base[0] - T(2) * lo.th_central.top[0];
    ev.star_s[i] = T(2) * up.central.kite_base[0] + T(2) * lo.central.kite_top[0];
    ev.K_s[i] = ev.eps_s[i] / ev.star_s[i];
    ev.eps_sbar[i] = two_pi - up.th_central.base[2] - up.th_chord.base[2] -
                     lo.th_central.top[2] - lo.th_chord.top[2];
    ev.star_sbar[i] = up.central.kite_base[2] + up.chord.kite_base[2] +
                      lo.central.kite_top[2] + lo.chord.kite_top[2];
    ev.K_sbar[i] = ev.eps_sbar[i] / ev.star_sbar[i];
    ev.alpha[i] = lo.central.alpha_top + up.central.alpha_base;
    const T s = rho_ext[i + 1] * f.s, sb = rho_ext[i + 1] * f.sbar;
    ev.f_alpha_s[i] = sq(s) / (T(4) * sq(s) - sq(sb));
    ev.f_alpha_sbar[i] = T(1) - T(2) * ev.f_alpha_s[i];
    ev.rate_alpha[i] =
        -T(4) * ev.K_s[i] * ev.f_alpha_s[i] - T(2) * ev.K_sbar[i] * ev.f_alpha_sbar[i];
  }
  for (int b = 1; b <= n - 1; ++b) {
    ev.rate_sigma[b] = -T(2) * ev.K_s[b - 1] * ev.f_sigma_s[b] -
                       T(2) * ev.K_s[b] * ev.f_sigma_splus[b] -
                       T(2) * (ev.K_a[b] + ev.K_ahat[b]) * ev.f_sigma_a[b];
  }
  return ev;
}

template LatticeEvalT<double> evaluate_ext(const std::vector<double>&,
                                           const std::vector<double>&, double, CrossSection);
template LatticeEvalT<long double> evaluate_ext(const std::vector<long double>&,
                                                const std::vector<long double>&, double,
                                                CrossSection);

}  // namespace detail

namespace {

constexpr double kPi2 = 2.0 * 3.141592653589793238462643383279502884;

struct LevelEval {
  detail::BandEval<double> lo, up;
  detail::EdgeFactors<double> f;
  double rho, rho_up, a_up;
};

// i is the 1-based public level index; requires 1 < i < n_levels
LevelEval eval_level(const LatticeState& st, int i) {
  const int n = st.n_levels();
  if (static_cast<int>(st.a.size()) != n - 1)
    throw SrfError(errc::domain, "state arrays are inconsistent");
  if (!(i > 1 && i < n))
    throw SrfError(errc::domain, "level index must be interior (1 < i < n_levels)", i);
  const int L = i - 1;
  const auto f = detail::edge_factors(st.xi, st.cross_section);
  return LevelEval{detail::make_band(st.rho[L - 1], st.rho[L], st.a[L - 1], f),
                   detail::make_band(st.rho[L], st.rho[L + 1], st.a[L], f),
                   f, st.rho[L], st.rho[L + 1], st.a[L]};
}

DeficitAngles deficits_of(const LevelEval& e) {
  DeficitAngles d;
  d.eps_s = kPi2 - 2 * e.up.th_central.base[0] - 2 * e.lo.th_central.top[0];
  d.eps_sbar = kPi2 - e.up.th_central.base[2] - e.up.th_chord.base[2] -
               e.lo.th_central.top[2] - e.lo.th_chord.top[2];
  d.eps_a = kPi2 - 6 * e.up.th_central.axial[0];
  d.eps_ahat = kPi2 - 2 * e.up.th_central.axial[1] - 2 * e.up.th_chord.axial[1] -
               2 * e.up.th_outer.axial[0];
  return d;
}

DualAreas areas_of(const LevelEval& e) {
  DualAreas s;
  s.star_s = 2 * e.up.central.kite_base[0] + 2 * e.lo.central.kite_top[0];
  s.star_sbar = e.up.central.kite_base[2] + e.up.chord.kite_base[2] +
                e.lo.central.kite_top[2] + e.lo.chord.kite_top[2];
  s.star_a = 6 * e.up.central.kite_axial[0];
  s.star_ahat = 2 * e.up.central.kite_axial[1] + 2 * e.up.chord.kite_axial[1] +
                2 * e.up.outer.kite_axial[0];
  return s;
}

VolumeFractions fractions_of(const LevelEval& e) {
  VolumeFractions v;
  const double s = e.rho * e.f.s, sbar = e.rho * e.f.sbar;
  const double sp = e.rho_up * e.f.s, az = e.a_up;
  v.f_alpha_s = s * s / (4 * s * s - sbar * sbar);
  v.f_alpha_sbar = 1.0 - 2.0 * v.f_alpha_s;
  const double spread = 4 * az * az - (s - sp) * (s - sp);
  v.f_sigma_s = s * (2 * az * az - s * (s - sp)) / ((s + sp) * spread);
  v.f_sigma_a = az * az / spread;
  v.f_sigma_splus = 1.0 - v.f_sigma_s - 2.0 * v.f_sigma_a;
  return v;
}

}  // namespace

LatticeState build_lattice(const RadialProfile& profile, int n_levels, double xi, double a_min,
                           double a_max, CrossSection cs) {
  if (n_levels < 5) throw SrfError(errc::config, "lattice needs at least 5 levels");
  if (!(xi > 0.0 && xi <= 0.5))
    throw SrfError(errc::config, "resolution parameter must lie in (0, 0.5]");
  if (!(a_max > a_min)) throw SrfError(errc::config, "empty axial range");
  LatticeState st;
  st.xi = xi;
  st.cross_section = cs;
  const double h = (a_max - a_min) / (n_levels - 1);
  st.rho.resize(n_levels);
  st.a.assign(n_levels - 1, h);
  for (int i = 0; i < n_levels; ++i) {
    st.rho[i] = profile.rho(a_min + h * i);
    if (!(st.rho[i] > 0.0))
      throw SrfError(errc::domain, "profile is non-positive at a lattice level", i + 1);
  }
  const auto f = detail::edge_factors(xi, cs);
  for (int j = 0; j + 1 < n_levels; ++j) {
    try {
      detail::make_band(st.rho[j], st.rho[j + 1], st.a[j], f);
    } catch (const SrfError& e) {
      throw SrfError(errc::realizability,
                     std::string(e.what()) + " (band at lower level " + std::to_string(j + 1) +
                         ")",
                     j + 1);
    }
  }
  return st;
}

DeficitAngles deficit_angles(const LatticeState& st, int i) {
  return deficits_of(eval_level(st, i));
}

DualAreas dual_areas(const LatticeState& st, int i) { return areas_of(eval_level(st, i)); }

GaussianCurvatures gaussian_curvatures(const LatticeState& st, int i) {
  const auto e = eval_level(st, i);
  const auto d = deficits_of(e);
  const auto s = areas_of(e);
  for (double area : {s.star_s, s.star_sbar, s.star_a, s.star_ahat})
    if (!(area > 0.0)) throw SrfError(errc::realizability, "non-positive dual area", i);
  return GaussianCurvatures{d.eps_s / s.star_s, d.eps_sbar / s.star_sbar, d.eps_a / s.star_a,
                            d.eps_ahat / s.star_ahat};
}

DualEdges dual_edges(const LatticeState& st, int i) {
  const auto e = eval_level(st, i);
  return DualEdges{e.lo.central.alpha_top + e.up.central.alpha_base,
                   2 * e.up.central.sigma_half[0]};
}

VolumeFractions volume_fractions(const LatticeState& st, int i) {
  return fractions_of(eval_level(st, i));
}

DualVertexData dual_vertex_data(const LatticeState& st, int i) {
  const auto e = eval_level(st, i);
  const auto d = deficits_of(e);
  const auto s = areas_of(e);
  const auto v = fractions_of(e);
  DualVertexData out;
  out.alpha = e.lo.central.alpha_top + e.up.central.alpha_base;
  out.sigma = 2 * e.up.central.sigma_half[0];
  out.eps_s = d.eps_s;
  out.eps_sbar = d.eps_sbar;
  out.eps_a = d.eps_a;
  out.eps_ahat = d.eps_ahat;
  out.star_s = s.star_s;
  out.star_sbar = s.star_sbar;
  out.star_a = s.star_a;
  out.star_ahat = s.star_ahat;
  out.K_s = d.eps_s / s.star_s;
  out.K_sbar = d.eps_sbar / s.star_sbar;
  out.K_a = d.eps_a / s.star_a;
  out.K_ahat = d.eps_ahat / s.star_ahat;
  out.f_alpha_s = v.f_alpha_s;
  out.f_alpha_sbar = v.f_alpha_sbar;
  out.f_sigma_s = v.f_sigma_s;
  out.f_sigma_splus = v.f_sigma_splus;
  out.f_sigma_a = v.f_sigma_a;
  return out;
}

}  // namespace srf
