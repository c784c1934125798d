#include "gnat/connection.hpp"

#include <algorithm>
#include <cmath>

#include "gnat/error.hpp"

namespace gnat {

std::string_view to_string(TableLabel l) {
  static constexpr std::array<std::string_view, 6> names{"A", "B", "C", "D", "E", "F"};
  return names[static_cast<std::size_t>(l)];
}

std::string_view to_string(LiftPair k) {
  switch (k) {
    case LiftPair::hh: return "hh";
    case LiftPair::hv: return "hv";
    case LiftPair::vh: return "vh";
    case LiftPair::vv: return "vv";
  }
  return "?";
}

// -------------------------------------------------------------------- tables

TableSet coeff_tables(const ProfileJet& j) {
  const DerivedValues d = derive(j);
  const InverseCoefficients c = psi_coeffs(j);

  const double al = d.alpha_det;
  const double ph = d.phi_det;
  const double a13 = j.a1 + j.a3;
  const double b13 = j.b1 + j.b3;
  const double da13 = j.da1 + j.da3;
  const double db13 = j.db1 + j.db3;
  const double p1 = d.phi1;
  const double p2 = d.phi2;
  const double p13 = d.phi1 + d.phi3;
  const double psl = c.psi_lambda;
  const double pst = c.psi_theta;
  const double psw = c.psi_omega;
  const double k = 2.0 * j.da2 - j.b2;

  TableSet s;
  s.t = j.t;
  for (TableLabel l : kAllTables) s[l].label = l;

  auto& A = s[TableLabel::A].f;
  A[0] = A[1] = -j.a1 * j.a2 / (2.0 * al);
  A[2] = 0.0;
  A[3] = j.a2 * psl;
  A[4] = A[5] = j.a2 * b13 / (2.0 * al);
  A[6] = da13 * p2 / ph;
  A[7] = db13 * p2 / ph + b13 * pst;

  auto& B = s[TableLabel::B].f;
  B[0] = j.a2 * j.a2 / al;
  B[1] = 0.0;
  B[2] = -j.a1 * a13 / (2.0 * al);
  B[3] = j.a2 * pst;
  B[4] = B[5] = -a13 * b13 / (2.0 * al);
  B[6] = -da13 * p13 / ph;
  B[7] = -db13 * p13 / ph + b13 * psw;

  auto& C = s[TableLabel::C].f;
  C[0] = 0.0;
  C[1] = -j.a1 * j.a1 / (2.0 * al);
  C[2] = 0.0;
  C[3] = j.a1 * psl / 2.0;
  C[4] = j.a1 * b13 / (2.0 * al);
  C[5] = da13 * j.a1 / al - j.a2 * k / (2.0 * al);
  C[6] = b13 * p1 / (2.0 * ph) + 0.5 * k * p2 / ph;
  C[7] = db13 * p1 / ph - psl * (da13 + b13 / 2.0) - 0.5 * k * pst;

  auto& D = s[TableLabel::D].f;
  D[0] = 0.0;
  D[1] = j.a1 * j.a2 / (2.0 * al);
  D[2] = 0.0;
  D[3] = j.a1 * pst / 2.0;
  D[4] = -j.a2 * b13 / (2.0 * al);
  D[5] = -da13 * j.a2 / al + k * a13 / (2.0 * al);
  D[6] = -b13 * p2 / (2.0 * ph) - 0.5 * k * p13 / ph;
  D[7] = -db13 * p2 / ph - (da13 + b13 / 2.0) * pst - 0.5 * k * psw;

  auto& E = s[TableLabel::E].f;
  E[4] = E[5] = (j.da2 + j.b2 / 2.0) * j.a1 / al - j.da1 * j.a2 / al;
  E[6] = j.b2 * p1 / ph - (j.b1 - j.da1) * p2 / ph;
  E[7] = 2.0 * j.db2 * p1 / ph - j.db1 * p2 / ph - (2.0 * j.da2 + j.b2) * psl - 2.0 * j.da1 * pst;

  auto& F = s[TableLabel::F].f;
  F[4] = F[5] = -(j.da2 + j.b2 / 2.0) * j.a2 / al + j.da1 * a13 / al;
  F[6] = (j.b1 - j.da1) * p13 / ph - j.b2 * p2 / ph;
  F[7] = j.db1 * p13 / ph - 2.0 * j.db2 * p2 / ph - (2.0 * j.da2 + j.b2) * pst - 2.0 * j.da1 * psw;

  return s;
}

TableSet coeff_tables(const MetricProfile& p, double t) { return coeff_tables(p.at(t)); }

FTensorTable coeff_table(TableLabel label, const MetricProfile& p, double t) {
  return coeff_tables(p, t)[label];
}

TableJet coeff_table_jet(const MetricProfile& p, double t, double h) {
  TableJet out;
  out.value = coeff_tables(p, t);
  out.derivative.t = t;
  for (TableLabel l : kAllTables) {
    out.derivative[l].label = l;
    for (int i = 0; i < 8; ++i) {
      auto f = [&](double s) { return coeff_tables(p, t + s)[l].f[static_cast<std::size_t>(i)]; };
      out.derivative[l].f[static_cast<std::size_t>(i)] = t >= 2.0 * h ? fd::central(f, h) : fd::forward(f, h);
    }
  }
  return out;
}

// ------------------------------------------------------------------ T basis

Vec t_basis(int i, const PointGeometry& geo, const Vec& u, const Vec& X, const Vec& Y) {
  if (i <= 4 && !geo.riemann) throw Error("T^1..T^4 need the curvature tensor at this point");
  switch (i) {
    case 1: return geo.curvature(X, u, Y);
    case 2: return geo.curvature(Y, u, X);
    case 3: return geo.curvature(X, Y, u);
    case 4: return geo.inner(geo.curvature(X, u, Y), u) * u;
    case 5: return geo.inner(X, u) * Y;
    case 6: return geo.inner(Y, u) * X;
    case 7: return geo.inner(X, Y) * u;
    case 8: return geo.inner(X, u) * geo.inner(Y, u) * u;
    default: throw Error("T-basis index must be in 1..8");
  }
}

Vec t_basis(int i, const ChartedManifold& M, const ChartPoint& x, const Vec& u, const Vec& X, const Vec& Y) {
  return t_basis(i, M.geometry_at(x, i <= 4 ? 2 : 1), u, X, Y);
}

Vec apply_table(const FTensorTable& P, const PointGeometry& geo, const Vec& u, const Vec& X, const Vec& Y) {
  Vec out = Vec::Zero(geo.dim());
  for (int i = 1; i <= 8; ++i) {
    if (P.coef(i) != 0.0) out += P.coef(i) * t_basis(i, geo, u, X, Y);
  }
  return out;
}

// -------------------------------------------------------------- connection

LiftVector nabla_bar(const TableSet& tables, const PointGeometry& geo, const Vec& u, LiftPair kind,
                     const Vec& X, const Vec& Y) {
  auto P = [&](TableLabel l, const Vec& a, const Vec& b) { return apply_table(tables[l], geo, u, a, b); };
  switch (kind) {
    case LiftPair::hh:
      return {geo.covariant(X, Y) + P(TableLabel::A, X, Y), P(TableLabel::B, X, Y)};
    case LiftPair::hv:
      return {P(TableLabel::C, X, Y), geo.covariant(X, Y) + P(TableLabel::D, X, Y)};
    case LiftPair::vh:
      return {P(TableLabel::C, Y, X), P(TableLabel::D, Y, X)};
    case LiftPair::vv:
      return {P(TableLabel::E, Y, X), P(TableLabel::F, Y, X)};
  }
  throw Error("unknown lift pair");
}

LiftVector nabla_bar(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P, LiftPair kind,
                     const Vec& X, const Vec& Y) {
  return nabla_bar(coeff_tables(p, P.t), M.geometry_at(P.x, 2), P.u, kind, X, Y);
}

// ------------------------------------------------------------- TM coordinates

namespace tm {

Vec point(const TangentPoint& P) {
  Vec z(2 * P.dim());
  z << P.x, P.u;
  return z;
}

Vec to_coordinates(const Christoffel& gamma, const Vec& u, const LiftVector& A) {
  Vec w(2 * A.dim());
  w << A.h, A.v - chart::contract(gamma, u, A.h);
  return w;
}

LiftVector from_coordinates(const Christoffel& gamma, const Vec& u, const Vec& w) {
  const Eigen::Index m = w.size() / 2;
  const Vec xi = w.head(m);
  return {xi, w.tail(m) + chart::contract(gamma, u, xi)};
}

Vec LiftField::components(const ChartedManifold& M, const Vec& z) const {
  const Eigen::Index m = z.size() / 2;
  Vec out(2 * m);
  if (horizontal) {
    out << w, -chart::contract(M.christoffel_at(z.head(m)), z.tail(m), w);
  } else {
    out << Vec::Zero(m), w;
  }
  return out;
}

LiftField field_for(LiftPair kind, bool first, const Vec& w) {
  const bool h = first ? (kind == LiftPair::hh || kind == LiftPair::hv) : (kind == LiftPair::hh || kind == LiftPair::vh);
  return {h, w};
}

}  // namespace tm

namespace {

LiftPair pair_of(const tm::LiftField& A, const tm::LiftField& B) {
  if (A.horizontal) return B.horizontal ? LiftPair::hh : LiftPair::hv;
  return B.horizontal ? LiftPair::vh : LiftPair::vv;
}

LiftPair swapped(LiftPair k) {
  if (k == LiftPair::hv) return LiftPair::vh;
  if (k == LiftPair::vh) return LiftPair::hv;
  return k;
}

// Derivative of f along the coordinate vector W at z; the step is shrunk so that
// the displacement stays at most `step` in every coordinate.
template <typename F>
auto along(F&& f, const Vec& z, const Vec& W, double step) {
  const double h = step / std::max(1.0, max_abs(W));
  return fd::central([&](double s) { return f(Vec(z + s * W)); }, h);
}

TangentPoint tangent_point_at(const ChartedManifold& M, const Vec& z) {
  const Eigen::Index m = z.size() / 2;
  return make_tangent_point(M, z.head(m), z.tail(m));
}

double field_pairing(const MetricProfile& p, const ChartedManifold& M, const Vec& z, const tm::LiftField& A,
                     const tm::LiftField& B) {
  return g_natural_on_lifts(p, tangent_point_at(M, z), A.lift(), B.lift());
}

Vec bracket_coordinates(const ChartedManifold& M, const Vec& z, const tm::LiftField& A, const tm::LiftField& B,
                        double step) {
  const Vec Az = A.components(M, z);
  const Vec Bz = B.components(M, z);
  const Vec dB = along([&](const Vec& y) { return B.components(M, y); }, z, Az, step);
  const Vec dA = along([&](const Vec& y) { return A.components(M, y); }, z, Bz, step);
  return (dB - dA).eval();
}

}  // namespace

LiftVector numeric_bracket(const ChartedManifold& M, const TangentPoint& P, const tm::LiftField& A,
                           const tm::LiftField& B, double step) {
  const Vec z = tm::point(P);
  return tm::from_coordinates(M.christoffel_at(P.x), P.u, bracket_coordinates(M, z, A, B, step));
}

LiftVector koszul_oracle(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P, LiftPair kind,
                         const Vec& X, const Vec& Y, const KoszulOptions& opts) {
  const int m = P.dim();
  const Vec z = tm::point(P);
  const Christoffel gamma = M.christoffel_at(P.x);
  const ProfileJet jet = p.at(P.t);
  const tm::LiftField A = tm::field_for(kind, true, X);
  const tm::LiftField B = tm::field_for(kind, false, Y);

  auto derivative = [&](const tm::LiftField& D, const tm::LiftField& F1, const tm::LiftField& F2) {
    return along([&](const Vec& y) { return field_pairing(p, M, y, F1, F2); }, z, D.components(M, z), opts.step);
  };
  auto pair_coordinate = [&](const Vec& w, const tm::LiftField& F) {
    return g_natural_on_lifts(jet, P, tm::from_coordinates(gamma, P.u, w), F.lift());
  };

  const Vec AB = bracket_coordinates(M, z, A, B, opts.step);
  Vec s(2 * m);
  for (int c = 0; c < 2 * m; ++c) {
    const tm::LiftField C{c < m, Vec::Unit(m, c % m)};
    const Vec BC = bracket_coordinates(M, z, B, C, opts.step);
    const Vec CA = bracket_coordinates(M, z, C, A, opts.step);
    const double twice = derivative(A, B, C) + derivative(B, C, A) - derivative(C, A, B) + pair_coordinate(AB, C) -
                         pair_coordinate(BC, A) + pair_coordinate(CA, B);
    s(c) = 0.5 * twice;
  }
  return apply_inverse(inverse_block(jet, P), s);
}

double torsion_residual(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P, LiftPair kind,
                        const Vec& X, const Vec& Y, double step) {
  const TableSet tables = coeff_tables(p, P.t);
  const PointGeometry geo = M.geometry_at(P.x, 2);
  const LiftVector ab = nabla_bar(tables, geo, P.u, kind, X, Y);
  const LiftVector ba = nabla_bar(tables, geo, P.u, swapped(kind), Y, X);
  const LiftVector br = numeric_bracket(M, P, tm::field_for(kind, true, X), tm::field_for(kind, false, Y), step);
  return (ab - ba - br).max_abs() / std::max({1.0, ab.max_abs(), ba.max_abs(), br.max_abs()});
}

double metric_compatibility_residual(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P,
                                     const tm::LiftField& A, const tm::LiftField& B, const tm::LiftField& C,
                                     double step) {
  const Vec z = tm::point(P);
  const double lhs =
      along([&](const Vec& y) { return field_pairing(p, M, y, B, C); }, z, A.components(M, z), step);
  const TableSet tables = coeff_tables(p, P.t);
  const PointGeometry geo = M.geometry_at(P.x, 2);
  const ProfileJet jet = p.at(P.t);
  const LiftVector nab = nabla_bar(tables, geo, P.u, pair_of(A, B), A.w, B.w);
  const LiftVector nac = nabla_bar(tables, geo, P.u, pair_of(A, C), A.w, C.w);
  const double rhs = g_natural_on_lifts(jet, P, nab, C.lift()) + g_natural_on_lifts(jet, P, B.lift(), nac);
  return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
}

double relative_residual(const LiftVector& a, const LiftVector& reference) {
  return (a - reference).max_abs() / std::max(1.0, reference.max_abs());
}

}  // namespace gnat
