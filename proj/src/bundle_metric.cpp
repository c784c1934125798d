#include "gnat/bundle_metric.hpp"

#include <cmath>

#include "gnat/error.hpp"

namespace gnat {

TangentPoint make_tangent_point(const ChartedManifold& M, const ChartPoint& x, const Vec& u) {
  if (u.size() != M.dim()) throw Error("tangent vector has the wrong dimension");
  TangentPoint P;
  P.x = x;
  P.u = u;
  P.g = M.metric_at(x);
  P.g_inv = P.g.inverse();
  P.t = u.dot(P.g * u);
  return P;
}

TangentPoint make_tangent_point(const PointGeometry& geo, const Vec& u) {
  if (u.size() != geo.dim()) throw Error("tangent vector has the wrong dimension");
  TangentPoint P;
  P.x = geo.x;
  P.u = u;
  P.g = geo.g;
  P.g_inv = geo.g_inv;
  P.t = u.dot(P.g * u);
  return P;
}

Vec LiftVector::stacked() const {
  Vec s(h.size() + v.size());
  s << h, v;
  return s;
}

LiftVector LiftVector::from_stacked(const Vec& s) {
  const Eigen::Index m = s.size() / 2;
  return {s.head(m), s.tail(m)};
}

LiftVector geodesic_flow(const TangentPoint& P) { return LiftVector::horizontal(P.u); }
LiftVector canonical_vertical(const TangentPoint& P) { return LiftVector::vertical(P.u); }

Mat BlockMetric::full() const {
  const Eigen::Index m = hh.rows();
  Mat out(2 * m, 2 * m);
  out << hh, hv, vh, vv;
  return out;
}

double g_natural_on_lifts(const ProfileJet& j, const TangentPoint& P, const LiftVector& A,
                          const LiftVector& B) {
  const Vec gu = P.g * P.u;
  auto pair = [&](double a, double b, const Vec& X, const Vec& Y) {
    return a * X.dot(P.g * Y) + b * X.dot(gu) * Y.dot(gu);
  };
  return pair(j.a1 + j.a3, j.b1 + j.b3, A.h, B.h) + pair(j.a2, j.b2, A.h, B.v) +
         pair(j.a2, j.b2, A.v, B.h) + pair(j.a1, j.b1, A.v, B.v);
}

double g_natural_on_lifts(const MetricProfile& p, const TangentPoint& P, const LiftVector& A,
                          const LiftVector& B) {
  return g_natural_on_lifts(p.at(P.t), P, A, B);
}

BlockMetric assemble_block(const ProfileJet& j, const TangentPoint& P) {
  const Vec gu = P.g * P.u;
  const Mat uu = gu * gu.transpose();
  auto M = [&](double a, double b) -> Mat { return a * P.g + b * uu; };
  BlockMetric G;
  G.hh = M(j.a1 + j.a3, j.b1 + j.b3);
  G.hv = M(j.a2, j.b2);
  G.vh = G.hv;
  G.vv = M(j.a1, j.b1);
  return G;
}

BlockMetric assemble_block(const MetricProfile& p, const TangentPoint& P) {
  return assemble_block(p.at(P.t), P);
}

Mat mu_matrix(double a, double b, const Vec& u) {
  return a * Mat::Identity(u.size(), u.size()) + b * u * u.transpose();
}

Mat mu_inverse(double a, double b, const Vec& u) {
  const double n2 = u.squaredNorm();
  const double den = a * (a + b * n2);
  if (std::abs(den) < 1e-12) throw SingularMu("mu(a, b, u) is singular: a (a + b |u|^2) = 0");
  return Mat::Identity(u.size(), u.size()) / a - (b / den) * u * u.transpose();
}

BlockMetric inverse_block(const ProfileJet& j, const TangentPoint& P) {
  const InverseCoefficients c = psi_coeffs(j);
  if (!c.side_conditions_hold) throw SideConditionFailed(j.t, "alpha1 (alpha1 + alpha3) or phi1 (phi1 + phi3) vanishes");
  const double al = derive(j).alpha_det;
  const Mat uu = P.u * P.u.transpose();
  BlockMetric inv;
  inv.hh = (j.a1 / al) * P.g_inv - c.psi_lambda * uu;
  inv.hv = -(j.a2 / al) * P.g_inv - c.psi_theta * uu;
  inv.vh = inv.hv;
  inv.vv = ((j.a1 + j.a3) / al) * P.g_inv - c.psi_omega * uu;
  return inv;
}

BlockMetric inverse_block(const MetricProfile& p, const TangentPoint& P) {
  return inverse_block(p.at(P.t), P);
}

LiftVector apply_inverse(const BlockMetric& inv, const Vec& covector) {
  const Eigen::Index m = inv.hh.rows();
  const auto sh = covector.head(m);
  const auto sv = covector.tail(m);
  return {inv.hh * sh + inv.hv * sv, inv.vh * sh + inv.vv * sv};
}

}  // namespace gnat
