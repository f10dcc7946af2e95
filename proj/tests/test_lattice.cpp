#include <cmath>
#include <vector>

#include "doctest.h"
#include "srf/error.hpp"
#include "srf/lattice.hpp"
#include "srf/profile.hpp"

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

srf::LatticeState mini_state() {
  srf::LatticeState st;
  st.xi = 0.11;
  st.rho = {1.31, 1.12, 0.93, 0.87};
  st.a = {0.53, 0.47, 0.44};
  return st;
}

double rel(double x, double ref) { return std::fabs(x - ref) / std::fabs(ref); }

srf::detail::LatticeEvalT<double> eval_with_copied_ghosts(const srf::LatticeState& st) {
  std::vector<double> re(st.rho.size() + 2), ae(st.a.size() + 2);
  re.front() = st.rho.front();
  re.back() = st.rho.back();
  std::copy(st.rho.begin(), st.rho.end(), re.begin() + 1);
  ae.front() = st.a.front();
  ae.back() = st.a.back();
  std::copy(st.a.begin(), st.a.end(), ae.begin() + 1);
  return srf::detail::evaluate_ext(re, ae, st.xi, st.cross_section);
}

}  // namespace

TEST_CASE("lattice construction samples the profile on an even grid") {
  const auto cyl = srf::build_lattice(srf::RadialProfile::cylinder(1.0), 5, 0.1, -1.0, 1.0);
  CHECK(cyl.n_levels() == 5);
  for (double r : cyl.rho) CHECK(r == 1.0);
  for (double av : cyl.a) CHECK(av == doctest::Approx(0.5).epsilon(1e-15));

  const auto sph = srf::build_lattice(srf::RadialProfile::sphere(1.0), 7, 0.1, -1.2, 1.2);
  for (int i = 0; i < 7; ++i)
    CHECK(sph.rho[i] == doctest::Approx(std::cos(-1.2 + 0.4 * i)).epsilon(1e-15));

  CHECK_THROWS_AS(srf::build_lattice(srf::RadialProfile::cylinder(1.0), 4, 0.1, 0.0, 1.0),
                  srf::SrfError);
  CHECK_THROWS_AS(srf::build_lattice(srf::RadialProfile::cylinder(1.0), 5, 0.6, 0.0, 1.0),
                  srf::SrfError);
  CHECK_THROWS_AS(srf::build_lattice(srf::RadialProfile::cylinder(1.0), 5, 0.1, 1.0, 1.0),
                  srf::SrfError);
  // sphere domain is open: the poles themselves are outside
  CHECK_THROWS_AS(
      srf::build_lattice(srf::RadialProfile::sphere(1.0), 5, 0.1, -kPi / 2, kPi / 2),
      srf::SrfError);
}

TEST_CASE("interior-level precondition is enforced") {
  const auto st = mini_state();
  CHECK_THROWS_AS(srf::deficit_angles(st, 1), srf::SrfError);
  CHECK_THROWS_AS(srf::deficit_angles(st, 4), srf::SrfError);
  CHECK_THROWS_AS(srf::deficit_angles(st, 0), srf::SrfError);
  CHECK_NOTHROW(srf::deficit_angles(st, 2));
  CHECK_NOTHROW(srf::deficit_angles(st, 3));
}

TEST_CASE("dual geometry at a generic level matches pinned references") {
  const auto st = mini_state();
  const auto v = srf::dual_vertex_data(st, 2);

  CHECK(rel(v.eps_s, 0.00289112718278308617) < 1e-12);
  CHECK(rel(v.eps_sbar, 0.002852607626458033035) < 1e-12);
  CHECK(rel(v.eps_a, 0.008704243405709670799) < 1e-12);
  CHECK(rel(v.eps_ahat, 0.008551260435268634744) < 1e-12);
  CHECK(rel(v.star_s, 0.03545432225957642233) < 1e-14);
  CHECK(rel(v.star_sbar, 0.03498203032117578223) < 1e-14);
  CHECK(rel(v.star_a, 0.01090847103899377543) < 1e-14);
  CHECK(rel(v.star_ahat, 0.01071668914186858416) < 1e-14);
  CHECK(rel(v.K_s, 0.08154512619408979403) < 1e-12);
  CHECK(rel(v.K_sbar, 0.08154494179633865062) < 1e-12);
  CHECK(rel(v.K_a, 0.7979343186222156315) < 1e-12);
  CHECK(rel(v.K_ahat, 0.797938647101376986) < 1e-12);
  CHECK(rel(v.alpha, 0.4999398240734124723) < 1e-14);
  CHECK(rel(v.sigma, 0.06474289205107527377) < 1e-14);
  CHECK(rel(v.f_alpha_s, 0.3330002425962180175) < 1e-13);
  CHECK(rel(v.f_alpha_sbar, 0.3339995148075639651) < 1e-13);
  CHECK(rel(v.f_sigma_s, 0.2717246286406655921) < 1e-13);
  CHECK(rel(v.f_sigma_splus, 0.2280300503033846031) < 1e-13);
  CHECK(rel(v.f_sigma_a, 0.2501226605279749024) < 1e-13);

  // the split accessors agree with the combined record
  const auto d = srf::deficit_angles(st, 2);
  const auto s = srf::dual_areas(st, 2);
  const auto K = srf::gaussian_curvatures(st, 2);
  const auto e = srf::dual_edges(st, 2);
  const auto fr = srf::volume_fractions(st, 2);
  CHECK(d.eps_ahat == v.eps_ahat);
  CHECK(s.star_sbar == v.star_sbar);
  CHECK(K.K_a == v.K_a);
  CHECK(e.alpha == v.alpha);
  CHECK(e.sigma == v.sigma);
  CHECK(fr.f_sigma_splus == v.f_sigma_splus);
}

TEST_CASE("flow rates at a generic level match pinned references") {
  const auto st = mini_state();
  const auto ev = eval_with_copied_ghosts(st);
  // level 2 (1-based) is entry 1 of the level arrays; its band is entry 2
  CHECK(rel(ev.rate_alpha[1], -0.1630901292106607611) < 1e-12);
  CHECK(rel(ev.rate_sigma[2], -0.5597398692193157521) < 1e-12);
  CHECK(std::isnan(ev.rate_sigma.front()));
  CHECK(std::isnan(ev.rate_sigma.back()));
}

TEST_CASE("volume fraction decompositions sum to one") {
  const auto st = mini_state();
  for (int i : {2, 3}) {
    const auto v = srf::volume_fractions(st, i);
    CHECK(2.0 * v.f_alpha_s + v.f_alpha_sbar == 1.0);  // complement is exact here
    CHECK(std::fabs(v.f_sigma_s + v.f_sigma_splus + 2.0 * v.f_sigma_a - 1.0) < 5e-16);
    CHECK(v.f_alpha_s > 0.0);
    CHECK(v.f_sigma_splus > 0.0);
  }
}

TEST_CASE("cylinder lattice reproduces the small-xi limits") {
  const double rho0 = 1.3, xi = 0.05;
  const auto st = srf::build_lattice(srf::RadialProfile::cylinder(rho0), 7, xi, 0.0, 0.6);
  const auto v = srf::dual_vertex_data(st, 3);

  // straight prisms: base and top angles are exact supplements
  CHECK(std::fabs(v.eps_s) < 1e-13);
  CHECK(std::fabs(v.eps_sbar) < 1e-13);
  // axial deficits are genuinely curved, ~ (sqrt(3)/2) xi^2
  const double lead = std::sqrt(3.0) / 2 * xi * xi;
  CHECK(rel(v.eps_a, lead) < 0.01);
  CHECK(rel(v.eps_ahat, lead) < 0.01);
  // both axial curvature families approach 1/rho^2
  CHECK(rel(v.K_a, 1.0 / (rho0 * rho0)) < 0.01);
  CHECK(rel(v.K_ahat, 1.0 / (rho0 * rho0)) < 0.01);
  // dual area and edge leading terms
  CHECK(rel(v.star_s, st.a[0] * rho0 * xi / std::sqrt(3.0)) < 0.01);
  CHECK(rel(v.star_a, std::sqrt(3.0) / 2 * rho0 * rho0 * xi * xi) < 0.01);
  CHECK(rel(v.star_ahat, std::sqrt(3.0) / 2 * rho0 * rho0 * xi * xi) < 0.01);
  CHECK(rel(v.sigma, rho0 * xi / std::sqrt(3.0)) < 0.01);
  CHECK(rel(v.alpha, st.a[0]) < 0.01);
  CHECK(rel(v.f_alpha_s, 1.0 / 3.0) < 0.01);
  CHECK(rel(v.f_sigma_s, 0.25) < 0.01);
  CHECK(rel(v.f_sigma_a, 0.25) < 0.01);

  const auto ev = eval_with_copied_ghosts(st);
  for (int i = 1; i < 6; ++i) CHECK(std::fabs(ev.rate_alpha[i]) < 1e-11);
  for (int b = 2; b < 6; ++b)
    CHECK(rel(ev.rate_sigma[b], -1.0 / (rho0 * rho0)) < 0.02);
}

TEST_CASE("flat prism lattice is exactly flat") {
  auto st = srf::build_lattice(srf::RadialProfile::cylinder(2.0), 6, 0.3, 0.0, 1.05,
                               srf::CrossSection::flat);
  const auto v = srf::dual_vertex_data(st, 3);
  CHECK(std::fabs(v.eps_s) < 1e-13);
  CHECK(std::fabs(v.eps_sbar) < 1e-13);
  CHECK(std::fabs(v.eps_a) < 1e-13);
  CHECK(std::fabs(v.eps_ahat) < 1e-13);
  CHECK(std::fabs(v.K_a) < 1e-12);
  CHECK(v.f_alpha_s == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(v.f_sigma_s == doctest::Approx(0.25).epsilon(1e-15));
  const auto ev = eval_with_copied_ghosts(st);
  for (int i = 1; i < 5; ++i) CHECK(std::fabs(ev.rate_alpha[i]) < 1e-12);
  for (int b = 2; b < 5; ++b) CHECK(std::fabs(ev.rate_sigma[b]) < 1e-12);

  // six equilateral prisms around an axial edge: every axial angle is pi/3,
  // every radial angle pi/2; with unit cross-section edge, sigma = 1/sqrt(3)
  srf::LatticeState unit;
  unit.xi = 0.25;
  unit.cross_section = srf::CrossSection::flat;
  unit.rho = {4.0, 4.0, 4.0, 4.0};  // rho*xi = 1
  unit.a = {1.0, 1.0, 1.0};
  const auto ue = srf::dual_edges(unit, 2);
  CHECK(ue.sigma == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(ue.alpha == doctest::Approx(1.0).epsilon(1e-14));
  const auto ua = srf::dual_areas(unit, 2);
  CHECK(ua.star_a == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
  CHECK(ua.star_ahat == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-14));
}

TEST_CASE("mirror reversal maps levels to opposite levels") {
  const auto st = mini_state();
  srf::LatticeState rev = st;
  std::reverse(rev.rho.begin(), rev.rho.end());
  std::reverse(rev.a.begin(), rev.a.end());
  const int n = st.n_levels();

  for (int i = 2; i < n; ++i) {
    const auto v = srf::dual_vertex_data(st, i);
    // level quantities land at the mirrored level
    const auto w = srf::dual_vertex_data(rev, n + 1 - i);
    CHECK(rel(w.eps_s, v.eps_s) < 1e-12);
    CHECK(rel(w.eps_sbar, v.eps_sbar) < 1e-12);
    CHECK(rel(w.star_s, v.star_s) < 1e-13);
    CHECK(rel(w.star_sbar, v.star_sbar) < 1e-13);
    CHECK(rel(w.K_s, v.K_s) < 1e-12);
    CHECK(rel(w.alpha, v.alpha) < 1e-13);
    CHECK(rel(w.f_alpha_s, v.f_alpha_s) < 1e-13);
  }
  // band quantities of level i land one lower, with the edge pair swapped
  for (int i = 2; i < n - 1; ++i) {
    const auto v = srf::dual_vertex_data(st, i);
    const auto w = srf::dual_vertex_data(rev, n - i);
    CHECK(rel(w.eps_a, v.eps_a) < 1e-12);
    CHECK(rel(w.eps_ahat, v.eps_ahat) < 1e-12);
    CHECK(rel(w.star_a, v.star_a) < 1e-13);
    CHECK(rel(w.star_ahat, v.star_ahat) < 1e-13);
    CHECK(rel(w.sigma, v.sigma) < 1e-13);
    CHECK(rel(w.f_sigma_s, v.f_sigma_splus) < 1e-13);
    CHECK(rel(w.f_sigma_splus, v.f_sigma_s) < 1e-13);
    CHECK(rel(w.f_sigma_a, v.f_sigma_a) < 1e-13);
  }
}

TEST_CASE("global scaling acts covariantly") {
  const auto st = mini_state();
  const double c = 3.7;
  srf::LatticeState sc = st;
  for (auto& r : sc.rho) r *= c;
  for (auto& av : sc.a) av *= c;
  for (int i = 2; i < st.n_levels(); ++i) {
    const auto v = srf::dual_vertex_data(st, i);
    const auto w = srf::dual_vertex_data(sc, i);
    CHECK(rel(w.eps_s, v.eps_s) < 1e-11);
    CHECK(rel(w.eps_ahat, v.eps_ahat) < 1e-11);
    CHECK(rel(w.K_s, v.K_s / (c * c)) < 1e-11);
    CHECK(rel(w.K_ahat, v.K_ahat / (c * c)) < 1e-11);
    CHECK(rel(w.star_s, v.star_s * c * c) < 1e-13);
    CHECK(rel(w.star_a, v.star_a * c * c) < 1e-13);
    CHECK(rel(w.alpha, v.alpha * c) < 1e-13);
    CHECK(rel(w.sigma, v.sigma * c) < 1e-13);
    CHECK(rel(w.f_sigma_s, v.f_sigma_s) < 1e-13);
  }
}

TEST_CASE("extended evaluation matches the per-level route on interior levels") {
  const auto st = mini_state();
  const auto ev = eval_with_copied_ghosts(st);
  for (int i = 2; i < st.n_levels(); ++i) {
    const auto v = srf::dual_vertex_data(st, i);
    const int L = i - 1;
    CHECK(ev.eps_s[L] == v.eps_s);
    CHECK(ev.star_sbar[L] == v.star_sbar);
    CHECK(ev.alpha[L] == v.alpha);
    CHECK(ev.f_alpha_s[L] == v.f_alpha_s);
    CHECK(ev.eps_a[L + 1] == v.eps_a);
    CHECK(ev.star_ahat[L + 1] == v.star_ahat);
    CHECK(ev.sigma[L + 1] == v.sigma);
    CHECK(ev.f_sigma_splus[L + 1] == v.f_sigma_splus);
  }
}

TEST_CASE("extended-precision evaluation agrees with double evaluation") {
  const auto st = mini_state();
  std::vector<long double> re, ae;
  re.push_back(st.rho.front());
  for (double r : st.rho) re.push_back(r);
  re.push_back(st.rho.back());
  ae.push_back(st.a.front());
  for (double av : st.a) ae.push_back(av);
  ae.push_back(st.a.back());
  const auto evl = srf::detail::evaluate_ext(re, ae, st.xi, st.cross_section);
  const auto evd = eval_with_copied_ghosts(st);
  for (int i = 0; i < st.n_levels(); ++i) {
    CHECK(rel(static_cast<double>(evl.eps_s[i]), evd.eps_s[i]) < 1e-10);
    CHECK(rel(static_cast<double>(evl.rate_alpha[i]), evd.rate_alpha[i]) < 1e-10);
  }
}
