#pragma once

#include <array>
#include <cmath>

#include "srf/dual.hpp"
#include "srf/error.hpp"

namespace srf {

// Cross-section geometry: geodesic hexagonal patch on a round 2-sphere, or
// the planar hexagonal lattice (all edge factors equal to xi), which tiles
// flat space with prisms when rho is constant.
enum class CrossSection { sphere, flat };

// Five distinct geodesic lengths of the two-ring patch around the pole.
struct SphereEdges {
  double s, sbar, u, ubar, uprime;
  double rho;
  double xi;
};

// Vertices of the two-ring hexagonal patch: the hexagonal lattice of edge
// rho*xi in the tangent plane at the pole, centrally projected onto the
// sphere. Returns unit directions from the center: pole, six ring-1, then
// per sextant a ring-2 corner (2 xi) and midpoint (sqrt(3) xi).
std::array<std::array<double, 3>, 19> project_hex_vertices(double rho, double xi);

// Geodesic lengths between the projected vertices, via atan2 of cross/dot of
// the direction vectors (stable near zero separation).
SphereEdges exact_edges(double rho, double xi);

// Truncated small-xi series, rho*xi*(1 + c2 xi^2 + c4 xi^4), with the fixed
// tabulated coefficients. order must be 0, 2 or 4. The verification registry
// audits this table against exact_edges and reports any coefficient that
// degrades the remainder order.
SphereEdges edge_series(double rho, double xi, int order);

namespace detail {

template <class T>
struct EdgeFactors {
  T s, sbar, u, ubar, uprime;
};

// Closed forms of the five geodesic lengths per unit rho; algebraically equal
// to the vertex route of exact_edges, usable at extended precision.
template <class T>
EdgeFactors<T> edge_factors(const T& xi, CrossSection cs) {
  if (!(value_of(xi) > 0.0) || !(value_of(xi) < 1.0))
    throw SrfError(errc::domain, "resolution parameter must lie in (0, 1)");
  if (cs == CrossSection::flat) return {xi, xi, xi, xi, xi};
  using std::atan;
  using std::atan2;
  using std::sqrt;
  const T x2 = xi * xi;
  const T w = xi * sqrt(T(1) + T(0.75) * x2);
  EdgeFactors<T> f;
  f.s = atan(xi);
  f.sbar = atan2(w, T(1) + T(0.5) * x2);
  f.u = atan2(w, T(1) + T(1.5) * x2);
  f.ubar = atan2(xi * sqrt(T(1) + T(3) * x2), T(1) + T(3) * x2);
  f.uprime = atan(T(2) * xi) - atan(xi);
  return f;
}

}  // namespace detail
}  // namespace srf
