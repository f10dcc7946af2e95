#include "srf/sphere_patch.hpp"

namespace srf {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

void check_inputs(double rho, double xi) {
  if (!(rho > 0.0)) throw SrfError(errc::domain, "sphere radius must be positive");
  if (!(xi > 0.0) || !(xi < 1.0))
    throw SrfError(errc::domain, "resolution parameter must lie in (0, 1)");
}

std::array<double, 3> unit_dir(double x, double y) {
  const double n = std::sqrt(x * x + y * y + 1.0);
  return {x / n, y / n, 1.0 / n};
}

double angle_between(const std::array<double, 3>& p, const std::array<double, 3>& q) {
  const double cx = p[1] * q[2] - p[2] * q[1];
  const double cy = p[2] * q[0] - p[0] * q[2];
  const double cz = p[0] * q[1] - p[1] * q[0];
  const double s = std::sqrt(cx * cx + cy * cy + cz * cz);
  const double c = p[0] * q[0] + p[1] * q[1] + p[2] * q[2];
  return std::atan2(s, c);
}

}  // namespace

std::array<std::array<double, 3>, 19> project_hex_vertices(double rho, double xi) {
  check_inputs(rho, xi);
  std::array<std::array<double, 3>, 19> out;
  out[0] = unit_dir(0.0, 0.0);
  for (int k = 0; k < 6; ++k) {
    const double th = kPi / 3.0 * k;
    out[1 + k] = unit_dir(xi * std::cos(th), xi * std::sin(th));
  }
  const double r_mid = std::sqrt(3.0) * xi;
  for (int k = 0; k < 6; ++k) {
    const double th = kPi / 3.0 * k;
    out[7 + 2 * k] = unit_dir(2.0 * xi * std::cos(th), 2.0 * xi * std::sin(th));
    out[8 + 2 * k] = unit_dir(r_mid * std::cos(th + kPi / 6.0), r_mid * std::sin(th + kPi / 6.0));
  }
  return out;
}

SphereEdges exact_edges(double rho, double xi) {
  check_inputs(rho, xi);
  const auto O = unit_dir(0.0, 0.0);
  const auto X = unit_dir(xi, 0.0);
  const auto Y = unit_dir(0.5 * xi, 0.5 * std::sqrt(3.0) * xi);
  const auto V = unit_dir(1.5 * xi, 0.5 * std::sqrt(3.0) * xi);
  const auto U = unit_dir(2.0 * xi, 0.0);
  SphereEdges e;
  e.s = rho * angle_between(O, X);
  e.sbar = rho * angle_between(X, Y);
  e.u = rho * angle_between(X, V);
  e.ubar = rho * angle_between(U, V);
  e.uprime = rho * angle_between(X, U);
  e.rho = rho;
  e.xi = xi;
  return e;
}

SphereEdges edge_series(double rho, double xi, int order) {
  check_inputs(rho, xi);
  if (order != 0 && order != 2 && order != 4)
    throw SrfError(errc::domain, "series order must be 0, 2 or 4");
  static constexpr double c2[5] = {-1.0 / 3.0, -11.0 / 24.0, -35.0 / 24.0, -11.0 / 6.0,
                                   -7.0 / 3.0};
  static constexpr double c4[5] = {1.0 / 5.0, 203.0 / 640.0, 1183.0 / 640.0, 203.0 / 40.0,
                                   31.0 / 5.0};
  const double x2 = xi * xi;
  double v[5];
  for (int k = 0; k < 5; ++k) {
    double poly = 1.0;
    if (order >= 2) poly += c2[k] * x2;
    if (order >= 4) poly += c4[k] * x2 * x2;
    v[k] = rho * xi * poly;
  }
  return SphereEdges{v[0], v[1], v[2], v[3], v[4], rho, xi};
}

}  // namespace srf
