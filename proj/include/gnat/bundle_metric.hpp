#pragma once

#include "gnat/base_manifold.hpp"
#include "gnat/profile.hpp"

namespace gnat {

// A point (x, u) of TM together with g(x) and t = g_x(u, u).
struct TangentPoint {
  ChartPoint x;
  Vec u;
  Mat g;
  Mat g_inv;
  double t = 0.0;

  int dim() const { return static_cast<int>(x.size()); }
  double inner(const Vec& a, const Vec& b) const { return a.dot(g * b); }
};

TangentPoint make_tangent_point(const ChartedManifold& M, const ChartPoint& x, const Vec& u);
TangentPoint make_tangent_point(const PointGeometry& geo, const Vec& u);

// X^h + Y^v at a point of TM, in the frame (∂^h_1..∂^h_m, ∂^v_1..∂^v_m).
struct LiftVector {
  Vec h;
  Vec v;

  static LiftVector zero(int m) { return {Vec::Zero(m), Vec::Zero(m)}; }
  static LiftVector horizontal(const Vec& X) { return {X, Vec::Zero(X.size())}; }
  static LiftVector vertical(const Vec& Y) { return {Vec::Zero(Y.size()), Y}; }

  int dim() const { return static_cast<int>(h.size()); }
  Vec stacked() const;
  static LiftVector from_stacked(const Vec& s);
  double max_abs() const { return std::max(gnat::max_abs(h), gnat::max_abs(v)); }

  LiftVector& operator+=(const LiftVector& o) {
    h += o.h;
    v += o.v;
    return *this;
  }
  LiftVector& operator-=(const LiftVector& o) {
    h -= o.h;
    v -= o.v;
    return *this;
  }
  friend LiftVector operator+(LiftVector a, const LiftVector& b) { return a += b; }
  friend LiftVector operator-(LiftVector a, const LiftVector& b) { return a -= b; }
  friend LiftVector operator*(double s, LiftVector a) {
    a.h *= s;
    a.v *= s;
    return a;
  }
};

// Geodesic flow ξ = u^h and canonical vertical vector 𝒰 = u^v.
LiftVector geodesic_flow(const TangentPoint& P);
LiftVector canonical_vertical(const TangentPoint& P);

// G in the lift frame: [[HH, HV], [VH, VV]].
struct BlockMetric {
  Mat hh, hv, vh, vv;

  Mat full() const;
  int dim() const { return static_cast<int>(hh.rows()); }
};

// G_(x,u)(A, B) from the four lift-pair cases.
double g_natural_on_lifts(const MetricProfile& p, const TangentPoint& P, const LiftVector& A,
                          const LiftVector& B);
double g_natural_on_lifts(const ProfileJet& j, const TangentPoint& P, const LiftVector& A,
                          const LiftVector& B);

// Blocks M1+M3 (HH), M2 (HV, VH), M1 (VV) with M_l = α_l g + β_l (g u)(g u)^T.
BlockMetric assemble_block(const MetricProfile& p, const TangentPoint& P);
BlockMetric assemble_block(const ProfileJet& j, const TangentPoint& P);

// μ(a, b, u)^{-1} = I/a − b u u^T / (a (a + b |u|²)) with Euclidean |u|².
Mat mu_inverse(double a, double b, const Vec& u);
Mat mu_matrix(double a, double b, const Vec& u);

// Closed-form inverse blocks (Λ, Θ, Θ, Ω). Throws DegenerateAt or
// SideConditionFailed.
BlockMetric inverse_block(const MetricProfile& p, const TangentPoint& P);
BlockMetric inverse_block(const ProfileJet& j, const TangentPoint& P);

// G^{-1} applied to a stacked covector (h-part first).
LiftVector apply_inverse(const BlockMetric& inv, const Vec& covector);

}  // namespace gnat
