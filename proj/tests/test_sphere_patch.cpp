#include <cmath>

#include "doctest.h"
#include "srf/error.hpp"
#include "srf/sphere_patch.hpp"

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("exact edge lengths at xi = 0.1 match pinned references") {
  const auto e = srf::exact_edges(1.0, 0.1);
  CHECK(e.s == doctest::Approx(0.099668652491162027).epsilon(1e-15));
  CHECK(e.sbar == doctest::Approx(0.099544814200844038).epsilon(1e-15));
  CHECK(e.u == doctest::Approx(0.098570448645005614).epsilon(1e-15));
  CHECK(e.ubar == doctest::Approx(0.098215895776923670).epsilon(1e-15));
  CHECK(e.uprime == doctest::Approx(0.097726907358718731).epsilon(1e-15));
  CHECK(e.s == doctest::Approx(std::atan(0.1)).epsilon(1e-15));
  CHECK(e.uprime == doctest::Approx(std::atan(0.2) - std::atan(0.1)).epsilon(1e-14));
}

TEST_CASE("edge ordering, range and homogeneity") {
  for (double xi : {0.02, 0.1, 0.3}) {
    const auto e = srf::exact_edges(1.0, xi);
    CHECK(e.s > e.sbar);
    CHECK(e.sbar > e.u);
    CHECK(e.u > e.ubar);
    CHECK(e.ubar > e.uprime);
    CHECK(e.uprime > 0.0);
    CHECK(e.s < kPi);
    const auto e2 = srf::exact_edges(2.5, xi);
    CHECK(e2.s == doctest::Approx(2.5 * e.s).epsilon(1e-15));
    CHECK(e2.uprime == doctest::Approx(2.5 * e.uprime).epsilon(1e-15));
  }
}

TEST_CASE("closed-form factors equal the vertex route") {
  for (double xi : {0.05, 0.17, 0.4}) {
    const auto e = srf::exact_edges(1.0, xi);
    const auto f = srf::detail::edge_factors(xi, srf::CrossSection::sphere);
    CHECK(e.s == doctest::Approx(f.s).epsilon(1e-14));
    CHECK(e.sbar == doctest::Approx(f.sbar).epsilon(1e-14));
    CHECK(e.u == doctest::Approx(f.u).epsilon(1e-14));
    CHECK(e.ubar == doctest::Approx(f.ubar).epsilon(1e-14));
    CHECK(e.uprime == doctest::Approx(f.uprime).epsilon(1e-14));
  }
  const auto flat = srf::detail::edge_factors(0.2, srf::CrossSection::flat);
  CHECK(flat.s == 0.2);
  CHECK(flat.uprime == 0.2);
}

TEST_CASE("projected vertices are unit directions with ring-1 spacing s") {
  const auto dirs = srf::project_hex_vertices(1.0, 0.1);
  for (const auto& d : dirs) {
    CHECK(d[0] * d[0] + d[1] * d[1] + d[2] * d[2] == doctest::Approx(1.0).epsilon(1e-15));
  }
  auto angle = [&](int i, int j) {
    const auto &p = dirs[i], &q = dirs[j];
    return std::acos(p[0] * q[0] + p[1] * q[1] + p[2] * q[2]);
  };
  const auto e = srf::exact_edges(1.0, 0.1);
  for (int k = 1; k <= 6; ++k) CHECK(angle(0, k) == doctest::Approx(e.s).epsilon(1e-12));
  // ring-1 neighbours are sbar apart, pole-to-corner is arctan(2 xi)
  CHECK(angle(1, 2) == doctest::Approx(e.sbar).epsilon(1e-12));
  CHECK(angle(0, 7) == doctest::Approx(std::atan(0.2)).epsilon(1e-12));
}

TEST_CASE("series truncations follow the tabulated coefficients") {
  const double xi = 0.1, rho = 1.0;
  const auto s0 = srf::edge_series(rho, xi, 0);
  CHECK(s0.s == doctest::Approx(rho * xi).epsilon(1e-15));
  CHECK(s0.uprime == doctest::Approx(rho * xi).epsilon(1e-15));
  const auto s2 = srf::edge_series(rho, xi, 2);
  CHECK(s2.s == doctest::Approx(0.1 * (1 - 0.01 / 3)).epsilon(1e-15));
  CHECK(s2.sbar == doctest::Approx(0.1 * (1 - 11.0 * 0.01 / 24)).epsilon(1e-15));
  CHECK(s2.sbar == doctest::Approx(0.0995417).epsilon(1e-6));
  const auto s4 = srf::edge_series(rho, xi, 4);
  CHECK(s4.s == doctest::Approx(0.1 * (1 - 0.01 / 3 + 0.0001 / 5)).epsilon(1e-15));
  CHECK_THROWS_AS(srf::edge_series(rho, xi, 3), srf::SrfError);
  CHECK_THROWS_AS(srf::edge_series(rho, xi, 6), srf::SrfError);
}

TEST_CASE("series remainders shrink at the expected rate") {
  // order-2 remainders are O(xi^5): ratio 32 under xi halving
  for (int k : {0, 1, 2, 3, 4}) {
    auto pick = [&](const srf::SphereEdges& e) {
      const double v[5] = {e.s, e.sbar, e.u, e.ubar, e.uprime};
      return v[k];
    };
    double prev = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double xi = 0.05 / (1 << j);
      const double err = std::fabs(pick(srf::exact_edges(1.0, xi)) -
                                   pick(srf::edge_series(1.0, xi, 2)));
      if (j > 0) {
        const double order = std::log2(prev / err);
        CHECK(order == doctest::Approx(5.0).epsilon(0.06));
      }
      prev = err;
    }
  }
}

TEST_CASE("inputs outside the projection regime are rejected") {
  CHECK_THROWS_AS(srf::exact_edges(1.0, 1.0), srf::SrfError);
  CHECK_THROWS_AS(srf::exact_edges(1.0, 0.0), srf::SrfError);
  CHECK_THROWS_AS(srf::exact_edges(-1.0, 0.1), srf::SrfError);
  CHECK_THROWS_AS(srf::project_hex_vertices(1.0, 1.2), srf::SrfError);
  CHECK_THROWS_AS(srf::detail::edge_factors(1.5, srf::CrossSection::sphere), srf::SrfError);
}
