#pragma once

#include <vector>

#include "srf/frustum.hpp"
#include "srf/profile.hpp"
#include "srf/sphere_patch.hpp"

namespace srf {

// Boundary closure for quantities that need levels beyond the ends: either
// mirror the interior (reflective) or extend with the smooth-cap slope
// drho/dx -> -/+1 (pole_regular).
enum class Closure { reflective, pole_regular };

struct LatticeState {
  double xi{};
  std::vector<double> rho;  // n_levels cross-section radii
  std::vector<double> a;    // n_levels - 1 axial edges
  double t{};
  CrossSection cross_section{CrossSection::sphere};

  int n_levels() const { return static_cast<int>(rho.size()); }
};

struct DeficitAngles {
  double eps_s, eps_sbar, eps_a, eps_ahat;
};
struct DualAreas {
  double star_s, star_sbar, star_a, star_ahat;
};
struct GaussianCurvatures {
  double K_s, K_sbar, K_a, K_ahat;
};
struct DualEdges {
  double alpha, sigma;
};
struct VolumeFractions {
  double f_alpha_s, f_alpha_sbar, f_sigma_s, f_sigma_splus, f_sigma_a;
};

struct DualVertexData {
  double alpha, sigma;
  double eps_s, eps_sbar, eps_a, eps_ahat;
  double star_s, star_sbar, star_a, star_ahat;
  double K_s, K_sbar, K_a, K_ahat;
  double f_alpha_s, f_alpha_sbar, f_sigma_s, f_sigma_splus, f_sigma_a;
};

// Sample the profile at n_levels equal spacings of [a_min, a_max] and check
// every band for realizability. Throws with the offending index on failure.
LatticeState build_lattice(const RadialProfile& profile, int n_levels, double xi, double a_min,
                           double a_max, CrossSection cs = CrossSection::sphere);

// Per-level dual geometry. Levels are indexed 1..n_levels and must be
// interior (1 < i < n_levels). Radial-edge families (s, sbar) live at level
// i; axial families (a, ahat) and sigma live on the band joining levels i
// and i+1. Angles are summed from explicitly constructed incident blocks.
DeficitAngles deficit_angles(const LatticeState& st, int i);
DualAreas dual_areas(const LatticeState& st, int i);
GaussianCurvatures gaussian_curvatures(const LatticeState& st, int i);
DualEdges dual_edges(const LatticeState& st, int i);
VolumeFractions volume_fractions(const LatticeState& st, int i);
DualVertexData dual_vertex_data(const LatticeState& st, int i);

namespace detail {

// One band of six central + six chord + six outer blocks (one representative
// each, by symmetry), with the embedded dihedral angles of the three shapes.
template <class T>
struct BandEval {
  BlockGeometry<T> central, chord, outer;
  BlockAngles<T> th_central, th_chord, th_outer;
};

template <class T>
BandEval<T> make_band(const T& rho_lo, const T& rho_hi, const T& a, const EdgeFactors<T>& f) {
  const T c = rho_hi / rho_lo;
  BandEval<T> b{make_block(rho_lo * f.s, rho_lo * f.s, rho_lo * f.sbar, c, a),
                make_block(rho_lo * f.u, rho_lo * f.u, rho_lo * f.sbar, c, a),
                make_block(rho_lo * f.u, rho_lo * f.uprime, rho_lo * f.ubar, c, a),
                {}, {}, {}};
  b.th_central = embedded_dihedrals(b.central);
  b.th_chord = embedded_dihedrals(b.chord);
  b.th_outer = embedded_dihedrals(b.outer);
  return b;
}

// Full static evaluation of a lattice extended by one ghost level at each
// end: rho_ext has n+2 entries (ghosts first/last), a_ext has n+1. Level
// arrays run over the n physical levels; band arrays have n+1 entries, entry
// b corresponding to band b-1 (the two outermost involve a ghost level).
// rate_sigma is only defined for physical bands (entries 1..n-1).
template <class T>
struct LatticeEvalT {
  std::vector<T> eps_s, star_s, K_s, eps_sbar, star_sbar, K_sbar;
  std::vector<T> alpha, f_alpha_s, f_alpha_sbar, rate_alpha;
  std::vector<T> eps_a, star_a, K_a, eps_ahat, star_ahat, K_ahat;
  std::vector<T> sigma, f_sigma_s, f_sigma_splus, f_sigma_a, rate_sigma;
};

template <class T>
LatticeEvalT<T> evaluate_ext(const std::vector<T>& rho_ext, const std::vector<T>& a_ext,
                             double xi, CrossSection cs);

extern template LatticeEvalT<double> evaluate_ext(const std::vector<double>&,
                                                  const std::vector<double>&, double,
                                                  CrossSection);
extern template LatticeEvalT<long double> evaluate_ext(const std::vector<long double>&,
                                                       const std::vector<long double>&, double,
                                                       CrossSection);

}  // namespace detail
}  // namespace srf
