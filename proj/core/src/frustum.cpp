#include "srf/frustum.hpp"

namespace srf {

namespace {

detail::BlockGeometry<double> geom(const FrustumBlock& blk) {
  return detail::BlockGeometry<double>(blk.a, {blk.s_base, blk.sp_base, blk.sbar_base},
                                       {blk.s_top, blk.sp_top, blk.sbar_top});
}

BlockDihedrals pack(const detail::BlockAngles<double>& a) {
  return BlockDihedrals{a.base[0], a.base[1], a.base[2], a.top[0], a.top[1],
                        a.top[2],  a.axial[0], a.axial[1], a.axial[2]};
}

}  // namespace

double triangle_area(double e1, double e2, double e3) {
  for (double v : {e1, e2, e3}) {
    if (!(v > 0.0)) throw SrfError(errc::domain, "edge lengths must be positive");
  }
  return detail::tri_area_checked(e1, e2, e3);
}

double tetra_dihedral(double l_ab, double l_ax, double l_ay, double l_bx, double l_by,
                      double l_xy) {
  return detail::tetra_dihedral_t(l_ab, l_ax, l_ay, l_bx, l_by, l_xy);
}

BlockMetrics block_metrics(const FrustumBlock& blk) {
  const auto g = geom(blk);
  return BlockMetrics{g.diag[0], g.diag[1], g.diag[2], g.h2[0],      g.h2[1],
                      g.h2[2],   g.h3,      g.r3,      g.area_base, g.area_top};
}

BlockDihedrals block_dihedrals(const FrustumBlock& blk) {
  return pack(detail::embedded_dihedrals(geom(blk)));
}

BlockDihedrals block_dihedrals_closed(const FrustumBlock& blk) {
  return pack(detail::closed_form_dihedrals(geom(blk)));
}

BlockDihedrals block_dihedrals_tetra(const FrustumBlock& blk) {
  return pack(detail::tetra_dihedrals(geom(blk)));
}

MomentArms moment_arms(const FrustumBlock& blk) {
  const auto g = geom(blk);
  return MomentArms{g.m_base[0], g.m_base[1], g.m_base[2],
                    g.m_bot[0],  g.m_top[0],  g.m_leg[0],
                    g.m_bot[1],  g.m_top[1],  g.m_leg[1],
                    g.m_bot[2],  g.m_top[2],  g.m_leg[2]};
}

DualSegments dual_segments(const FrustumBlock& blk) {
  const auto g = geom(blk);
  return DualSegments{g.sigma_half[0], g.sigma_half[1], g.sigma_half[2], g.alpha_base,
                      g.alpha_top};
}

KiteAreas kite_areas(const FrustumBlock& blk) {
  const auto g = geom(blk);
  return KiteAreas{g.kite_base[0], g.kite_base[1], g.kite_base[2],
                   g.kite_top[0],  g.kite_top[1],  g.kite_top[2],
                   g.kite_axial[0], g.kite_axial[1], g.kite_axial[2]};
}

}  // namespace srf
