#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>

#include "srf/dual.hpp"
#include "srf/error.hpp"

namespace srf {

// Triangle-based frustum: base edges (s, sp, sbar), similar top triangle at a
// common ratio, three equal axial edges a joining matching vertices. The
// primitive cell of the axisymmetric lattice.
struct FrustumBlock {
  double a{};
  double s_base{}, sp_base{}, sbar_base{};
  double s_top{}, sp_top{}, sbar_top{};

  static FrustumBlock similar(double s, double sp, double sbar, double ratio, double a) {
    return FrustumBlock{a, s, sp, sbar, ratio * s, ratio * sp, ratio * sbar};
  }
};

struct BlockMetrics {
  double d_s, d_sp, d_sbar;     // trapezoid diagonals
  double h2_s, h2_sp, h2_sbar;  // trapezoid slant heights
  double h3;                    // block height
  double r3;                    // block circumradius
  double area_base, area_top;
};

// Axial fields are named by the two trapezoid faces meeting at the edge.
struct BlockDihedrals {
  double s_base, sp_base, sbar_base;
  double s_top, sp_top, sbar_top;
  double a_s_sp, a_s_sbar, a_sp_sbar;
};

// Circumcenter-to-edge moment arms, signed: negative when the circumcenter
// lies on the far side of the edge.
struct MomentArms {
  double base_s, base_sp, base_sbar;               // base triangle
  double trap_s_bot, trap_s_top, trap_s_leg;       // s-trapezoid
  double trap_sp_bot, trap_sp_top, trap_sp_leg;    // sp-trapezoid
  double trap_sbar_bot, trap_sbar_top, trap_sbar_leg;
};

// Dual half-segments through the trapezoid faces plus the axial dual pieces
// below/above the base plane circumcenter; all signed.
struct DualSegments {
  double sigma_s, sigma_sp, sigma_sbar;
  double alpha_base, alpha_top;
};

struct KiteAreas {
  double s_base, sp_base, sbar_base;
  double s_top, sp_top, sbar_top;
  double a_s_sp, a_s_sbar, a_sp_sbar;
};

// Area from edge lengths. Weak triangle inequality allowed (degenerate gives
// zero); a violated inequality is a domain error.
double triangle_area(double e1, double e2, double e3);

// Dihedral angle at edge ab of the tetrahedron (a, b, x, y) from its six edge
// lengths, via a two-argument arctangent of (6V * l_ab, n1.n2). Planar
// configurations (zero volume) fold to 0 or pi; non-embeddable lengths are a
// domain error.
double tetra_dihedral(double l_ab, double l_ax, double l_ay, double l_bx, double l_by,
                      double l_xy);

BlockMetrics block_metrics(const FrustumBlock& blk);

// Dihedrals from an explicit coordinate embedding (the product route).
BlockDihedrals block_dihedrals(const FrustumBlock& blk);

// Same angles from arccos ratio formulas; kept as an independent route for
// cross-checking, never substituted for the embedding.
BlockDihedrals block_dihedrals_closed(const FrustumBlock& blk);

// Same angles from a three-tetrahedron decomposition along trapezoid
// diagonals; shared hinges accumulate two tetrahedron contributions.
BlockDihedrals block_dihedrals_tetra(const FrustumBlock& blk);

MomentArms moment_arms(const FrustumBlock& blk);
DualSegments dual_segments(const FrustumBlock& blk);
KiteAreas kite_areas(const FrustumBlock& blk);

namespace detail {

template <class T>
T sq(const T& x) {
  return x * x;
}

template <class T>
T tri_area_checked(const T& e1, const T& e2, const T& e3) {
  using std::sqrt;
  const T p = (e1 + e2 + e3) * T(0.5);
  const T r = p * (p - e1) * (p - e2) * (p - e3);
  const double scale = sq(sq(value_of(p)));
  if (value_of(r) < 0.0) {
    if (value_of(r) < -64.0 * std::numeric_limits<double>::epsilon() * scale)
      throw SrfError(errc::domain, "triangle inequality violated");
    return T(0);
  }
  return sqrt(r);
}

// All length-derived block data, templated so the same code path serves
// double evaluation, the long double verification route, and seeded
// derivative types for the velocity Jacobian.
template <class T>
struct BlockGeometry {
  T a;
  std::array<T, 3> base, top;
  T ratio;
  T area_base, area_top;
  std::array<T, 3> diag, h2;
  T H, h3, r3;
  std::array<T, 3> m_base;               // base triangle arms (signed)
  std::array<T, 3> m_bot, m_top, m_leg;  // per-trapezoid arms
  T alpha_base, alpha_top;
  std::array<T, 3> sigma_half;           // signed dual half-segments
  std::array<T, 3> kite_base, kite_top;
  std::array<T, 3> kite_axial;           // [0]=(s,sp) [1]=(s,sbar) [2]=(sp,sbar)

  BlockGeometry(const T& a_, const std::array<T, 3>& base_, const std::array<T, 3>& top_)
      : a(a_), base(base_), top(top_) {
    using std::sqrt;
    if (!(value_of(a) > 0.0)) throw SrfError(errc::domain, "axial edge must be positive");
    for (int k = 0; k < 3; ++k) {
      if (!(value_of(base[k]) > 0.0) || !(value_of(top[k]) > 0.0))
        throw SrfError(errc::domain, "edge lengths must be positive");
    }
    ratio = top[0] / base[0];
    for (int k = 1; k < 3; ++k) {
      const double rk = value_of(top[k]) / value_of(base[k]);
      if (std::fabs(rk - value_of(ratio)) > 1e-9 * std::fabs(value_of(ratio)))
        throw SrfError(errc::domain, "top triangle not similar to base");
    }
    area_base = tri_area_checked(base[0], base[1], base[2]);
    area_top = tri_area_checked(top[0], top[1], top[2]);
    if (!(value_of(area_base) > 0.0))
      throw SrfError(errc::domain, "degenerate base triangle");

    for (int k = 0; k < 3; ++k) {
      diag[k] = sqrt(a * a + base[k] * top[k]);
      const T g = T(4) * a * a - sq(base[k] - top[k]);
      if (!(value_of(g) > 0.0))
        throw SrfError(errc::realizability, "axial edges too short for trapezoid face");
      h2[k] = sqrt(g) * T(0.5);
    }

    const T Hsq =
        T(16) * sq(a * area_base) - sq(base[2] * base[1]) * sq(base[0] - top[0]);
    if (!(value_of(Hsq) > 0.0))
      throw SrfError(errc::realizability, "block height not realizable");
    H = sqrt(Hsq);
    h3 = H / (T(4) * area_base);
    r3 = a * sqrt((T(4) * sq(area_base * a) + base[0] * top[0] * sq(base[1] * base[2])) / Hsq);

    m_base[0] = base[0] * (sq(base[1]) + sq(base[2]) - sq(base[0])) / (T(8) * area_base);
    m_base[1] = base[1] * (sq(base[0]) + sq(base[2]) - sq(base[1])) / (T(8) * area_base);
    m_base[2] = base[2] * (sq(base[0]) + sq(base[1]) - sq(base[2])) / (T(8) * area_base);

    for (int k = 0; k < 3; ++k) {
      const T tw = T(4) * h2[k];
      m_bot[k] = (T(2) * a * a + base[k] * (top[k] - base[k])) / tw;
      m_top[k] = (T(2) * a * a + top[k] * (base[k] - top[k])) / tw;
      m_leg[k] = a * (base[k] + top[k]) / tw;
      sigma_half[k] = a * a * (base[k] + top[k]) * m_base[k] / (T(2) * base[k] * h2[k] * h3);
    }

    alpha_base = (T(8) * sq(a * area_base) +
                  sq(base[2] * base[1]) * base[0] * (top[0] - base[0])) /
                 (T(4) * area_base * H);
    alpha_top = (T(8) * sq(a * area_base) -
                 sq(base[2] * base[1]) * top[0] * (top[0] - base[0])) /
                (T(4) * area_base * H);

    for (int k = 0; k < 3; ++k) {
      kite_base[k] = T(0.5) * (m_bot[k] * sigma_half[k] + m_base[k] * alpha_base);
      kite_top[k] = T(0.5) * (m_top[k] * sigma_half[k] + ratio * m_base[k] * alpha_top);
    }
    kite_axial[0] = T(0.5) * (m_leg[0] * sigma_half[0] + m_leg[1] * sigma_half[1]);
    kite_axial[1] = T(0.5) * (m_leg[0] * sigma_half[0] + m_leg[2] * sigma_half[2]);
    kite_axial[2] = T(0.5) * (m_leg[1] * sigma_half[1] + m_leg[2] * sigma_half[2]);
  }
};

template <class T>
BlockGeometry<T> make_block(const T& s, const T& sp, const T& sbar, const T& ratio, const T& a) {
  return BlockGeometry<T>(a, {s, sp, sbar}, {ratio * s, ratio * sp, ratio * sbar});
}

template <class T>
using Vec3 = std::array<T, 3>;

template <class T>
Vec3<T> v3_sub(const Vec3<T>& p, const Vec3<T>& q) {
  return {p[0] - q[0], p[1] - q[1], p[2] - q[2]};
}
template <class T>
T v3_dot(const Vec3<T>& u, const Vec3<T>& w) {
  return u[0] * w[0] + u[1] * w[1] + u[2] * w[2];
}
template <class T>
Vec3<T> v3_cross(const Vec3<T>& u, const Vec3<T>& w) {
  return {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2], u[0] * w[1] - u[1] * w[0]};
}

// Six block vertices: base triangle recentred on its circumcenter, top scaled
// by the similarity ratio and lifted by the block height.
template <class T>
struct BlockFrame {
  Vec3<T> O, X, Y, Ot, Xt, Yt;
};

template <class T>
BlockFrame<T> embed_block(const BlockGeometry<T>& g) {
  using std::sqrt;
  const T& e1 = g.base[0];
  const T& e2 = g.base[1];
  const T& e3 = g.base[2];
  const T xY = (e1 * e1 + e2 * e2 - e3 * e3) / (T(2) * e1);
  const T yY = T(2) * g.area_base / e1;
  // circumcenter of (0,0), (e1,0), (xY,yY)
  const T cx = e1 * T(0.5);
  const T cy = (e2 * e2 - e1 * xY) / (T(2) * yY);
  const Vec3<T> O{-cx, -cy, T(0)};
  const Vec3<T> X{e1 - cx, -cy, T(0)};
  const Vec3<T> Y{xY - cx, yY - cy, T(0)};
  const T R2 = v3_dot(O, O);
  const T hsq = g.a * g.a - sq(T(1) - g.ratio) * R2;
  if (!(value_of(hsq) > 0.0))
    throw SrfError(errc::realizability, "block height not realizable");
  const T h = sqrt(hsq);
  auto lift = [&](const Vec3<T>& p) { return Vec3<T>{g.ratio * p[0], g.ratio * p[1], h}; };
  return BlockFrame<T>{O, X, Y, lift(O), lift(X), lift(Y)};
}

// Interior angle between the two half-planes at edge PQ containing A and B.
template <class T>
T wedge_angle(const Vec3<T>& P, const Vec3<T>& Q, const Vec3<T>& A, const Vec3<T>& B) {
  using std::atan2;
  using std::fabs;
  using std::sqrt;
  const Vec3<T> e = v3_sub(Q, P), u = v3_sub(A, P), w = v3_sub(B, P);
  const Vec3<T> n1 = v3_cross(e, u), n2 = v3_cross(e, w);
  const T c = v3_dot(n1, n2);
  const T s = v3_dot(v3_cross(n1, n2), e) / sqrt(v3_dot(e, e));
  if (value_of(s) == 0.0 && value_of(c) == 0.0)
    throw SrfError(errc::domain, "degenerate dihedral wedge");
  return atan2(fabs(s), c);
}

template <class T>
struct BlockAngles {
  std::array<T, 3> base, top;
  std::array<T, 3> axial;  // [0]=(s,sp) [1]=(s,sbar) [2]=(sp,sbar)
};

template <class T>
BlockAngles<T> embedded_dihedrals(const BlockGeometry<T>& g) {
  const BlockFrame<T> f = embed_block(g);
  BlockAngles<T> out;
  out.base[0] = wedge_angle(f.O, f.X, f.Y, f.Ot);
  out.base[1] = wedge_angle(f.O, f.Y, f.X, f.Ot);
  out.base[2] = wedge_angle(f.X, f.Y, f.O, f.Xt);
  out.top[0] = wedge_angle(f.Ot, f.Xt, f.Yt, f.O);
  out.top[1] = wedge_angle(f.Ot, f.Yt, f.Xt, f.O);
  out.top[2] = wedge_angle(f.Xt, f.Yt, f.Ot, f.X);
  out.axial[0] = wedge_angle(f.O, f.Ot, f.X, f.Y);
  out.axial[1] = wedge_angle(f.X, f.Xt, f.O, f.Y);
  out.axial[2] = wedge_angle(f.Y, f.Yt, f.O, f.X);
  return out;
}

template <class T>
T guarded_acos(T x) {
  using std::acos;
  if (std::fabs(value_of(x)) > 1.0 + 1e-12)
    throw SrfError(errc::domain, "dihedral cosine outside [-1, 1]");
  if (value_of(x) > 1.0) x = T(1);
  if (value_of(x) < -1.0) x = T(-1);
  return acos(x);
}

// arccos ratio forms for the nine dihedrals; the top-face angles use the
// supplement relation against the base angles.
template <class T>
BlockAngles<T> closed_form_dihedrals(const BlockGeometry<T>& g) {
  constexpr double kPi = 3.141592653589793238462643383279502884;
  BlockAngles<T> out;
  const auto& e = g.base;
  const auto& t = g.top;
  const T fourD = T(4) * g.area_base;
  for (int k = 0; k < 3; ++k) {
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    const T num = (t[k] - e[k]) * (e[k] * e[k] - e[i] * e[i] - e[j] * e[j]);
    out.base[k] = guarded_acos(num / (fourD * T(2) * g.h2[k]));
    out.top[k] = T(kPi) - out.base[k];
  }
  auto axial = [&](int i, int j, int k) {
    const T num = T(2) * g.a * g.a * sq(e[k]) * (sq(e[i]) + sq(e[j]) - sq(e[k])) -
                  sq(e[i]) * sq(e[j]) * sq(e[k] - t[k]);
    const T den = sq(e[k]) * e[i] * e[j] * (T(2) * g.h2[i]) * (T(2) * g.h2[j]);
    return guarded_acos(num / den);
  };
  out.axial[0] = axial(0, 1, 2);
  out.axial[1] = axial(0, 2, 1);
  out.axial[2] = axial(1, 2, 0);
  return out;
}

template <class T>
T tetra_dihedral_t(const T& l_ab, const T& l_ax, const T& l_ay, const T& l_bx, const T& l_by,
                   const T& l_xy) {
  using std::atan2;
  using std::sqrt;
  for (double v : {value_of(l_ab), value_of(l_ax), value_of(l_ay), value_of(l_bx),
                   value_of(l_by), value_of(l_xy)}) {
    if (!(v > 0.0)) throw SrfError(errc::domain, "tetrahedron edge must be positive");
  }
  const T ab2 = sq(l_ab), ax2 = sq(l_ax), ay2 = sq(l_ay);
  const T bx2 = sq(l_bx), by2 = sq(l_by), xy2 = sq(l_xy);
  const T dbx = (ab2 + ax2 - bx2) * T(0.5);  // AB.AX
  const T dby = (ab2 + ay2 - by2) * T(0.5);  // AB.AY
  const T dxy = (ax2 + ay2 - xy2) * T(0.5);  // AX.AY
  const T n1sq = ab2 * ax2 - dbx * dbx;
  const T n2sq = ab2 * ay2 - dby * dby;
  if (!(value_of(n1sq) > 0.0) || !(value_of(n2sq) > 0.0))
    throw SrfError(errc::domain, "degenerate tetrahedron face");
  // Gram determinant of (AB, AX, AY) = (6V)^2
  T gram = ab2 * (ax2 * ay2 - dxy * dxy) - dbx * (dbx * ay2 - dxy * dby) +
           dby * (dbx * dxy - ax2 * dby);
  const double scale = value_of(ab2) * value_of(ax2) * value_of(ay2);
  if (value_of(gram) < -1e-9 * scale)
    throw SrfError(errc::domain, "tetrahedron not embeddable");
  if (value_of(gram) < 0.0) gram = T(0);
  return atan2(l_ab * sqrt(gram), ab2 * dxy - dbx * dby);
}

// Decomposition into (O,X,Y,Ot), (X,Y,Ot,Xt), (Y,Ot,Xt,Yt) along the
// trapezoid diagonals X-Ot, Y-Ot, Y-Xt.
template <class T>
BlockAngles<T> tetra_dihedrals(const BlockGeometry<T>& g) {
  const T s = g.base[0], sp = g.base[1], sb = g.base[2];
  const T st = g.top[0], spt = g.top[1], sbt = g.top[2];
  const T a = g.a;
  const T ds = g.diag[0], dsp = g.diag[1], dsb = g.diag[2];
  BlockAngles<T> out;
  // T1 = (O, X, Y, Ot)
  out.base[0] = tetra_dihedral_t(s, sp, a, sb, ds, dsp);       // edge OX
  out.base[1] = tetra_dihedral_t(sp, s, a, sb, dsp, ds);       // edge OY
  out.axial[0] = tetra_dihedral_t(a, s, sp, ds, dsp, sb);      // edge O-Ot
  const T sbar_1 = tetra_dihedral_t(sb, s, ds, sp, dsp, a);    // edge XY in T1
  // T2 = (X, Y, Ot, Xt)
  const T sbar_2 = tetra_dihedral_t(sb, ds, a, dsp, dsb, st);  // edge XY in T2
  const T stop_2 = tetra_dihedral_t(st, ds, dsp, a, dsb, sb);  // edge Ot-Xt in T2
  out.axial[1] = tetra_dihedral_t(a, sb, ds, dsb, st, dsp);    // edge X-Xt
  // T3 = (Y, Ot, Xt, Yt)
  const T stop_3 = tetra_dihedral_t(st, dsp, spt, dsb, sbt, a);  // edge Ot-Xt in T3
  out.top[1] = tetra_dihedral_t(spt, dsp, st, a, sbt, dsb);      // edge Ot-Yt
  out.top[2] = tetra_dihedral_t(sbt, dsb, st, a, spt, dsp);      // edge Xt-Yt
  out.axial[2] = tetra_dihedral_t(a, dsp, dsb, spt, sbt, st);    // edge Y-Yt
  out.base[2] = sbar_1 + sbar_2;
  out.top[0] = stop_2 + stop_3;
  return out;
}

}  // namespace detail
}  // namespace srf
