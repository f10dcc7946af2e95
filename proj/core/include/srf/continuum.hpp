#pragma once

#include <vector>

#include "srf/flow.hpp"
#include "srf/profile.hpp"

namespace srf {

// Co-moving radial grid for the reference rotationally symmetric flow:
// rho[i] at arc-length nodes separated by the spacings h[i].
struct ContinuumGrid {
  std::vector<double> h;    // n - 1 spacings
  std::vector<double> rho;  // n profile values
  double t = 0.0;
};

struct ContinuumRhs {
  std::vector<double> rho_dot;  // n
  std::vector<double> h_dot;    // n - 1
};

ContinuumGrid continuum_from_profile(const RadialProfile& profile, int n_levels, double a_min,
                                     double a_max);

ContinuumGrid continuum_from_lattice(const LatticeState& st);

// Standalone right-hand side on the raw grid: second-order difference
// quotients in the interior, one-sided quadratic fits at the two ends.
// Exact on profiles that are polynomials of degree <= 2 in arc length.
ContinuumRhs continuum_rhs(const ContinuumGrid& g);

struct ContinuumTrajectory {
  std::vector<TrajectorySample> samples;
  std::vector<ContinuumGrid> dumps;
  ContinuumGrid final_grid;
  StopReason stop = StopReason::none;
  std::string stop_message;
  double T_est = 0.0;
  bool waist_applicable = false;
};

// Integrate the reference flow with the same step control, stop rules and
// monitoring as the lattice flow. cfg.mode is ignored; the closure supplies
// ghost values so the interior stencil applies everywhere.
ContinuumTrajectory integrate_continuum(const ContinuumGrid& g0, const FlowConfig& cfg);

}  // namespace srf
