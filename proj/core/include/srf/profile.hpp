#pragma once

#include <utility>
#include <vector>

#include "srf/error.hpp"

namespace srf {

enum class ProfileKind { sphere, angenent_knopf, cylinder, sampled };

struct ProfileSample {
  double rho, d1, d2;
};

// Initial radial profile rho(x) of the warped-product geometry. The sphere
// uses rho = R0 cos(x/R0) so that |rho'| = 1 at the poles for every R0; the
// dumbbell glues a parabolic waist R0 sqrt(A + B x^2) into R0 cos(x) at
// |x| = pi/4, with B fixed by continuity. Sampled profiles interpolate
// linearly between knots.
class RadialProfile {
 public:
  static RadialProfile sphere(double R0);
  static RadialProfile angenent_knopf(double R0, double A);
  static RadialProfile cylinder(double rho0);
  static RadialProfile sampled(std::vector<std::pair<double, double>> knots);

  ProfileKind kind() const { return kind_; }
  ProfileSample eval(double x) const;
  double rho(double x) const { return eval(x).rho; }

  // interval on which the profile is defined and positive
  std::pair<double, double> domain() const;
  // positions where smoothness degrades; difference stencils that straddle
  // one lose their formal order
  const std::vector<double>& breakpoints() const { return breaks_; }

 private:
  RadialProfile() = default;
  ProfileKind kind_{ProfileKind::cylinder};
  double R0_{1.0};
  double A_{0.1}, B_{0.0};
  double rho0_{1.0};
  std::vector<std::pair<double, double>> knots_;
  std::vector<double> breaks_;
};

}  // namespace srf
