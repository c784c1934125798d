#include "gnat/curvature_lab.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "gnat/error.hpp"

namespace gnat {

std::string_view to_string(CurvatureCase c) {
  static constexpr std::array<std::string_view, 6> names{"hhh", "hhv", "hvh", "hvv", "vvh", "vvv"};
  return names[static_cast<std::size_t>(c)];
}

std::string_view to_string(PlaneKind k) {
  switch (k) {
    case PlaneKind::horizontal: return "horizontal";
    case PlaneKind::vertical: return "vertical";
    case PlaneKind::mixed: return "mixed";
    case PlaneKind::general: return "general";
  }
  return "?";
}

std::string_view to_string(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::flat: return "flat";
    case ScanVerdict::constant_nonzero: return "constant_nonzero";
    case ScanVerdict::non_constant: return "non_constant";
    case ScanVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Combinators combinators(const FTensorTable& P, const FTensorTable& Q, double t) {
  const double p5 = P.coef(5), p6 = P.coef(6), p7 = P.coef(7), p8 = P.coef(8);
  const double q5 = Q.coef(5), q6 = Q.coef(6), q7 = Q.coef(7), q8 = Q.coef(8);
  return {t * p6 * q7, p6 * (q6 + t * q8) - (p5 * q6 - p6 * q5), p7 * q5 - (p5 + p7 + t * p8) * q7};
}

// ------------------------------------------------------ F-tensor derivatives

Vec nabla_f_tensor(const FTensorTable& P, const PointGeometry& geo, const Vec& u, const Vec& X, const Vec& Y,
                   const Vec& Z) {
  Vec out = Vec::Zero(geo.dim());
  if (P.coef(1) == 0.0 && P.coef(2) == 0.0 && P.coef(3) == 0.0 && P.coef(4) == 0.0) return out;
  if (!geo.nabla_riemann) throw Error("covariant derivative of an F-tensor needs nabla R at this point");
  if (P.coef(1) != 0.0) out += P.coef(1) * geo.nabla_curvature(X, Y, u, Z);
  if (P.coef(2) != 0.0) out += P.coef(2) * geo.nabla_curvature(X, Z, u, Y);
  if (P.coef(3) != 0.0) out += P.coef(3) * geo.nabla_curvature(X, Y, Z, u);
  if (P.coef(4) != 0.0) out += P.coef(4) * geo.inner(geo.nabla_curvature(X, Y, u, Z), u) * u;
  return out;
}

Vec nabla_f_tensor(const MetricProfile& p, const ChartedManifold& M, const ChartPoint& x, const Vec& u,
                   TableLabel label, const Vec& X, const Vec& Y, const Vec& Z) {
  const double t = u.dot(M.metric_at(x) * u);
  return nabla_f_tensor(coeff_table(label, p, t), M.geometry_at(x, 3), u, X, Y, Z);
}

Vec d_f_tensor_u(const FTensorTable& P, const FTensorTable& dP, const PointGeometry& geo, const Vec& u,
                 const Vec& X, const Vec& Z, const Vec& Y) {
  const int m = geo.dim();
  const double uy = geo.inner(u, Y);
  Vec out = Vec::Zero(m);
  for (int i = 1; i <= 8; ++i) {
    if (dP.coef(i) != 0.0 && uy != 0.0) out += 2.0 * dP.coef(i) * uy * t_basis(i, geo, u, X, Z);
  }
  auto R = [&](const Vec& a, const Vec& b, const Vec& c) { return geo.curvature(a, b, c); };
  auto g = [&](const Vec& a, const Vec& b) { return geo.inner(a, b); };
  if (P.coef(1) != 0.0) out += P.coef(1) * R(X, Y, Z);
  if (P.coef(2) != 0.0) out += P.coef(2) * R(Z, Y, X);
  if (P.coef(3) != 0.0) out += P.coef(3) * R(X, Z, Y);
  if (P.coef(4) != 0.0) {
    const Vec rxu = R(X, u, Z);
    out += P.coef(4) * (g(R(X, Y, Z), u) * u + g(rxu, Y) * u + g(rxu, u) * Y);
  }
  if (P.coef(5) != 0.0) out += P.coef(5) * g(X, Y) * Z;
  if (P.coef(6) != 0.0) out += P.coef(6) * g(Z, Y) * X;
  if (P.coef(7) != 0.0) out += P.coef(7) * g(X, Z) * Y;
  if (P.coef(8) != 0.0) {
    const double xu = g(X, u), zu = g(Z, u);
    out += P.coef(8) * (g(X, Y) * zu * u + xu * g(Z, Y) * u + xu * zu * Y);
  }
  return out;
}

Vec d_f_tensor_u(const MetricProfile& p, const ChartedManifold& M, const ChartPoint& x, const Vec& u,
                 TableLabel label, const Vec& X, const Vec& Z, const Vec& Y) {
  const PointGeometry geo = M.geometry_at(x, 2);
  const TableJet jet = coeff_table_jet(p, geo.inner(u, u));
  return d_f_tensor_u(jet.value[label], jet.derivative[label], geo, u, X, Z, Y);
}

// ------------------------------------------------------------------- R̄

CurvatureSite CurvatureSite::make(const MetricProfile& p, const ChartedManifold& M, const ChartPoint& x,
                                  const Vec& u) {
  CurvatureSite s;
  s.geo = M.geometry_at(x, 3);
  s.point = make_tangent_point(s.geo, u);
  s.jet = p.at(s.point.t);
  s.tables = coeff_table_jet(p, s.point.t);
  return s;
}

namespace {

// The building blocks of the six structural formulas at one site.
class Terms {
 public:
  explicit Terms(const CurvatureSite& s) : s_(s) {}

  Vec P(TableLabel l, const Vec& a, const Vec& b) const {
    return apply_table(s_.tables.value[l], s_.geo, s_.u(), a, b);
  }
  // (∇_a l_u)(b, c)
  Vec nab(TableLabel l, const Vec& a, const Vec& b, const Vec& c) const {
    return nabla_f_tensor(s_.tables.value[l], s_.geo, s_.u(), a, b, c);
  }
  // d(l_(a, b))_u(dir)
  Vec d(TableLabel l, const Vec& a, const Vec& b, const Vec& dir) const {
    return d_f_tensor_u(s_.tables.value[l], s_.tables.derivative[l], s_.geo, s_.u(), a, b, dir);
  }
  Vec R(const Vec& a, const Vec& b, const Vec& c) const { return s_.geo.curvature(a, b, c); }
  const Vec& u() const { return s_.u(); }

 private:
  const CurvatureSite& s_;
};

constexpr TableLabel A = TableLabel::A, B = TableLabel::B, C = TableLabel::C, D = TableLabel::D,
                     E = TableLabel::E, F = TableLabel::F;

LiftVector r_hhh(const Terms& T, const Vec& X, const Vec& Y, const Vec& Z) {
  const Vec Rxyu = T.R(X, Y, T.u());
  const Vec Ayz = T.P(A, Y, Z), Axz = T.P(A, X, Z);
  const Vec Byz = T.P(B, Y, Z), Bxz = T.P(B, X, Z);
  Vec h = T.R(X, Y, Z) + T.nab(A, X, Y, Z) - T.nab(A, Y, X, Z) + T.P(A, X, Ayz) - T.P(A, Y, Axz) +
          T.P(C, X, Byz) - T.P(C, Y, Bxz) + T.P(C, Z, Rxyu);
  Vec v = T.nab(B, X, Y, Z) - T.nab(B, Y, X, Z) + T.P(B, X, Ayz) - T.P(B, Y, Axz) + T.P(D, X, Byz) -
          T.P(D, Y, Bxz) + T.P(D, Z, Rxyu);
  return {h, v};
}

LiftVector r_hhv(const Terms& T, const Vec& X, const Vec& Y, const Vec& Z) {
  const Vec Rxyu = T.R(X, Y, T.u());
  const Vec Cyz = T.P(C, Y, Z), Cxz = T.P(C, X, Z);
  const Vec Dyz = T.P(D, Y, Z), Dxz = T.P(D, X, Z);
  Vec h = T.nab(C, X, Y, Z) - T.nab(C, Y, X, Z) + T.P(A, X, Cyz) - T.P(A, Y, Cxz) + T.P(C, X, Dyz) -
          T.P(C, Y, Dxz) + T.P(E, Rxyu, Z);
  Vec v = T.R(X, Y, Z) + T.nab(D, X, Y, Z) - T.nab(D, Y, X, Z) + T.P(B, X, Cyz) - T.P(B, Y, Cxz) +
          T.P(D, X, Dyz) - T.P(D, Y, Dxz) + T.P(F, Rxyu, Z);
  return {h, v};
}

LiftVector r_hvh(const Terms& T, const Vec& X, const Vec& Y, const Vec& Z) {
  const Vec Czy = T.P(C, Z, Y), Dzy = T.P(D, Z, Y);
  const Vec Axz = T.P(A, X, Z), Bxz = T.P(B, X, Z);
  Vec h = T.nab(C, X, Z, Y) + T.P(A, X, Czy) + T.P(C, X, Dzy) - T.P(C, Axz, Y) - T.P(E, Y, Bxz) -
          T.d(A, X, Z, Y);
  Vec v = T.nab(D, X, Z, Y) + T.P(B, X, Czy) + T.P(D, X, Dzy) - T.P(D, Axz, Y) - T.P(F, Y, Bxz) -
          T.d(B, X, Z, Y);
  return {h, v};
}

LiftVector r_hvv(const Terms& T, const Vec& X, const Vec& Y, const Vec& Z) {
  const Vec Eyz = T.P(E, Y, Z), Fyz = T.P(F, Y, Z);
  const Vec Cxz = T.P(C, X, Z), Dxz = T.P(D, X, Z);
  Vec h = T.nab(E, X, Y, Z) + T.P(A, X, Eyz) + T.P(C, X, Fyz) - T.P(C, Cxz, Y) - T.P(E, Y, Dxz) -
          T.d(C, X, Z, Y);
  Vec v = T.nab(F, X, Y, Z) + T.P(B, X, Eyz) + T.P(D, X, Fyz) - T.P(D, Cxz, Y) - T.P(F, Y, Dxz) -
          T.d(D, X, Z, Y);
  return {h, v};
}

LiftVector r_vvh(const Terms& T, const Vec& X, const Vec& Y, const Vec& Z) {
  const Vec Czy = T.P(C, Z, Y), Czx = T.P(C, Z, X);
  const Vec Dzy = T.P(D, Z, Y), Dzx = T.P(D, Z, X);
  Vec h = T.d(C, Z, Y, X) - T.d(C, Z, X, Y) + T.P(C, Czy, X) - T.P(C, Czx, Y) + T.P(E, X, Dzy) -
          T.P(E, Y, Dzx);
  Vec v = T.d(D, Z, Y, X) - T.d(D, Z, X, Y) + T.P(D, Czy, X) - T.P(D, Czx, Y) + T.P(F, X, Dzy) -
          T.P(F, Y, Dzx);
  return {h, v};
}

LiftVector r_vvv(const Terms& T, const Vec& X, const Vec& Y, const Vec& Z) {
  const Vec Eyz = T.P(E, Y, Z), Exz = T.P(E, X, Z);
  const Vec Fyz = T.P(F, Y, Z), Fxz = T.P(F, X, Z);
  Vec h = T.d(E, Y, Z, X) - T.d(E, X, Z, Y) + T.P(C, Eyz, X) - T.P(C, Exz, Y) + T.P(E, X, Fyz) -
          T.P(E, Y, Fxz);
  Vec v = T.d(F, Y, Z, X) - T.d(F, X, Z, Y) + T.P(D, Eyz, X) - T.P(D, Exz, Y) + T.P(F, X, Fyz) -
          T.P(F, Y, Fxz);
  return {h, v};
}

}  // namespace

LiftVector r_bar(const CurvatureSite& site, const CurvatureRequest& req) {
  const int m = site.point.dim();
  if (req.X.size() != m || req.Y.size() != m || req.Z.size() != m)
    throw Error("curvature arguments have the wrong dimension");
  const Terms T(site);
  switch (req.kase) {
    case CurvatureCase::hhh: return r_hhh(T, req.X, req.Y, req.Z);
    case CurvatureCase::hhv: return r_hhv(T, req.X, req.Y, req.Z);
    case CurvatureCase::hvh: return r_hvh(T, req.X, req.Y, req.Z);
    case CurvatureCase::hvv: return r_hvv(T, req.X, req.Y, req.Z);
    case CurvatureCase::vvh: return r_vvh(T, req.X, req.Y, req.Z);
    case CurvatureCase::vvv: return r_vvv(T, req.X, req.Y, req.Z);
  }
  throw Error("unknown curvature case");
}

LiftVector r_bar(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P,
                 const CurvatureRequest& req) {
  return r_bar(CurvatureSite::make(p, M, P.x, P.u), req);
}

LiftVector r_bar(const CurvatureSite& site, const LiftVector& A, const LiftVector& B, const LiftVector& C) {
  const Terms T(site);
  LiftVector out = LiftVector::zero(site.point.dim());
  // (h, h), (h, v), (v, h) = −(h, v) swapped, (v, v); each against C^h and C^v.
  out += r_hhh(T, A.h, B.h, C.h) + r_hhv(T, A.h, B.h, C.v);
  out += r_hvh(T, A.h, B.v, C.h) + r_hvv(T, A.h, B.v, C.v);
  out -= r_hvh(T, B.h, A.v, C.h) + r_hvv(T, B.h, A.v, C.v);
  out += r_vvh(T, A.v, B.v, C.h) + r_vvv(T, A.v, B.v, C.v);
  return out;
}

LiftVector coordinate_curvature_oracle(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P,
                                       const LiftVector& A, const LiftVector& B, const LiftVector& C) {
  const int m = P.dim();
  auto metric = [&](const Vec& z) -> Mat {
    const Vec x = z.head(m);
    const Vec u = z.tail(m);
    const Christoffel gamma = M.christoffel_at(x);
    const Mat G = assemble_block(p, make_tangent_point(M, x, u)).full();
    Mat L = Mat::Identity(2 * m, 2 * m);
    for (int i = 0; i < m; ++i)
      for (int k = 0; k < m; ++k) {
        double s = 0.0;
        for (int j = 0; j < m; ++j) s += gamma(i, j, k) * u(j);
        L(m + i, k) = s;
      }
    return L.transpose() * G * L;
  };
  const RiemannTensor R = chart::riemann_tensor(metric, tm::point(P), M.fd_step());
  const Christoffel gamma = M.christoffel_at(P.x);
  const Vec out = chart::contract(R, tm::to_coordinates(gamma, P.u, A), tm::to_coordinates(gamma, P.u, B),
                                  tm::to_coordinates(gamma, P.u, C));
  return tm::from_coordinates(gamma, P.u, out);
}

// ------------------------------------------------------ sectional curvature

double sectional_curvature(const CurvatureSite& site, const LiftVector& A, const LiftVector& B) {
  auto G = [&](const LiftVector& a, const LiftVector& b) { return g_natural_on_lifts(site.jet, site.point, a, b); };
  const double gram = G(A, A) * G(B, B) - G(A, B) * G(A, B);
  if (std::abs(gram) <= kPlaneThreshold) throw DegeneratePlane("plane is degenerate for G");
  return G(r_bar(site, A, B, B), A) / gram;
}

double sectional_curvature(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P,
                           const LiftVector& A, const LiftVector& B) {
  return sectional_curvature(CurvatureSite::make(p, M, P.x, P.u), A, B);
}

namespace {

constexpr std::array<double, 4> kSiteRadii{0.0, 0.5, 1.0, 2.0};
constexpr std::array<PlaneKind, 4> kPlaneKinds{PlaneKind::horizontal, PlaneKind::vertical, PlaneKind::mixed,
                                               PlaneKind::general};

std::mt19937_64 site_rng(std::uint64_t seed, int site) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(site)};
  return std::mt19937_64(seq);
}

Vec gaussian(std::mt19937_64& rng, int m) {
  std::normal_distribution<double> N;
  Vec v(m);
  for (int i = 0; i < m; ++i) v(i) = N(rng);
  return v;
}

struct SiteResult {
  std::vector<CurvatureSample> samples;
  int skipped = 0;
  std::string error;
  double t = 0;
  Combinators aa, cb;
  double a13 = 0, b13 = 0;
};

SiteResult scan_site(const MetricProfile& p, const ChartedManifold& M, const ScanOptions& opts, int index) {
  SiteResult out;
  try {
    std::mt19937_64 rng = site_rng(opts.seed, index);
    const int m = M.dim();
    const ChartPoint x = M.sample_point(rng, 3);
    const Mat g = M.metric_at(x);
    Vec u = gaussian(rng, m);
    u *= kSiteRadii[static_cast<std::size_t>(index) % kSiteRadii.size()] / std::sqrt(u.dot(g * u));
    const CurvatureSite site = CurvatureSite::make(p, M, x, u);
    out.t = site.t();
    out.aa = combinators(site.tables.value[TableLabel::A], site.tables.value[TableLabel::A], site.t());
    out.cb = combinators(site.tables.value[TableLabel::C], site.tables.value[TableLabel::B], site.t());
    out.a13 = site.jet.a1 + site.jet.a3;
    out.b13 = site.jet.b1 + site.jet.b3;
    for (int j = 0; j < opts.n_planes; ++j) {
      const PlaneKind kind = kPlaneKinds[static_cast<std::size_t>(j) % kPlaneKinds.size()];
      const Vec X = gaussian(rng, m), Y = gaussian(rng, m), X2 = gaussian(rng, m), Y2 = gaussian(rng, m);
      const LiftVector Cv{gaussian(rng, m), gaussian(rng, m)};
      LiftVector a, b;
      switch (kind) {
        case PlaneKind::horizontal: a = LiftVector::horizontal(X), b = LiftVector::horizontal(Y); break;
        case PlaneKind::vertical: a = LiftVector::vertical(X), b = LiftVector::vertical(Y); break;
        case PlaneKind::mixed: a = LiftVector::horizontal(X), b = LiftVector::vertical(Y); break;
        case PlaneKind::general: a = {X, X2}, b = {Y, Y2}; break;
      }
      try {
        CurvatureSample s;
        s.site = index;
        s.plane = j;
        s.kind = kind;
        s.t = site.t();
        s.K = sectional_curvature(site, a, b);
        s.r_bar_max = r_bar(site, a, b, Cv).max_abs();
        out.samples.push_back(s);
      } catch (const DegeneratePlane&) {
        ++out.skipped;
      }
    }
  } catch (const Error& e) {
    out.error = "site " + std::to_string(index) + ": " + e.what();
  }
  return out;
}

}  // namespace

ScanReport constant_curvature_scan(const MetricProfile& p, const ChartedManifold& M, const ScanOptions& opts) {
  if (opts.n_sites < 1 || opts.n_planes < 1) throw ConfigError("scan needs at least one site and one plane");
  std::vector<SiteResult> sites(static_cast<std::size_t>(opts.n_sites));
  int workers = opts.workers > 0 ? opts.workers : static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, opts.n_sites);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (int i = w; i < opts.n_sites; i += workers) sites[static_cast<std::size_t>(i)] = scan_site(p, M, opts, i);
      });
    }
  }

  ScanReport rep;
  if (M.dim() == 2)
    rep.warnings.push_back("dim M = 2: the constant-curvature classification is only established for dim M >= 3");
  for (const auto& s : sites) {
    if (!s.error.empty()) rep.warnings.push_back(s.error);
    rep.skipped_planes += s.skipped;
    rep.samples.insert(rep.samples.end(), s.samples.begin(), s.samples.end());
  }
  if (rep.samples.empty()) return rep;

  rep.K_min = std::numeric_limits<double>::infinity();
  rep.K_max = -std::numeric_limits<double>::infinity();
  for (const auto& s : rep.samples) {
    rep.K_min = std::min(rep.K_min, s.K);
    rep.K_max = std::max(rep.K_max, s.K);
    rep.r_bar_max = std::max(rep.r_bar_max, s.r_bar_max);
  }
  rep.spread = rep.K_max - rep.K_min;
  const double tol = opts.tolerance;
  if (rep.spread < tol) {
    rep.verdict = std::max(std::abs(rep.K_min), std::abs(rep.K_max)) < tol ? ScanVerdict::flat
                                                                             : ScanVerdict::constant_nonzero;
  } else if (rep.spread >= 0.1 * std::max(1.0, std::abs(rep.K_max))) {
    rep.verdict = ScanVerdict::non_constant;
  }

  if (rep.verdict == ScanVerdict::flat || rep.verdict == ScanVerdict::constant_nonzero) {
    rep.K_estimate = rep.verdict == ScanVerdict::flat ? 0.0 : 0.5 * (rep.K_min + rep.K_max);
    const double K = rep.K_estimate;
    for (const auto& s : sites) {
      if (!s.error.empty()) continue;
      rep.k02_residual[0] = std::max(rep.k02_residual[0], std::abs(s.aa.a1 + s.cb.a1 - K * s.a13));
      rep.k02_residual[1] = std::max(rep.k02_residual[1], std::abs(s.aa.a2 + s.cb.a2 - K * s.b13));
      rep.k02_residual[2] = std::max(rep.k02_residual[2], std::abs(s.aa.a3 + s.cb.a3));
    }
    const ProfileJet j0 = p.at(0.0);
    rep.rp2_residual = std::abs(K * (j0.a1 + j0.a3));
  }
  return rep;
}

// ---------------------------------------------------------------- flatness

std::vector<std::string> FlatnessResult::violated() const {
  std::vector<std::string> out;
  for (const auto& c : conditions)
    if (!c.pass) out.push_back(c.name);
  return out;
}

namespace {

double scaled_gap(double lhs, double rhs) {
  return std::abs(lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

}  // namespace

FlatnessResult flatness_check_tc(const MetricProfile& p, const ChartedManifold& M,
                                 const std::vector<double>& t_samples, std::uint64_t seed) {
  if (t_samples.empty()) throw ConfigError("flatness check needs at least one t sample");
  FlatnessResult res;
  constexpr double kIdentityTol = 1e-10;

  FlatnessCondition c1{"i", 0.0, 1e-8, true, "base curvature"};
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 10; ++k) c1.residual = std::max(c1.residual, M.riemann_tensor_at(M.sample_point(rng, 2)).max_abs());
  c1.pass = c1.residual < c1.tolerance;

  FlatnessCondition c2{"ii", 0.0, 0.0, true, ""};
  const Classification cls = classify(p, t_samples);
  c2.detail = std::string(to_string(cls));
  c2.pass = cls == Classification::Riemannian;
  c2.residual = c2.pass ? 0.0 : 1.0;

  FlatnessCondition c3{"iii", 0.0, kIdentityTol, true, ""};
  FlatnessCondition c4{"iv", 0.0, kIdentityTol, true, ""};
  for (double t : t_samples) {
    const ProfileJet j = p.at(t);
    const double a13 = j.a1 + j.a3;
    c3.residual = std::max({c3.residual, scaled_gap(j.da1 + j.da3, 0.0), scaled_gap(j.b1 + j.b3, 0.0),
                            scaled_gap(2.0 * j.da2, j.b2)});
    if (!(a13 > 0.0)) {
      c3.pass = false;
      c3.detail = "alpha1 + alpha3 is not positive";
      c4.pass = false;
      c4.detail = "alpha1 + alpha3 vanishes or is negative";
      continue;
    }
    c4.residual = std::max({c4.residual, scaled_gap(j.da1, j.a2 * j.b2 / a13),
                            scaled_gap(j.b1, j.b2 * (2.0 * j.a2 + t * j.b2) / a13)});
  }
  c3.pass = c3.pass && c3.residual <= c3.tolerance;
  c4.pass = c4.pass && c4.residual <= c4.tolerance;

  res.conditions = {c1, c2, c3, c4};
  for (const auto& c : res.conditions) res.flat = res.flat && c.pass;
  return res;
}

std::vector<L5Residuals> lemma_l5_residuals(const MetricProfile& p, const std::vector<double>& t_samples) {
  std::vector<L5Residuals> out;
  for (double t : t_samples) {
    const ProfileJet j = p.at(t);
    const TableJet tj = coeff_table_jet(p, t);
    const FTensorTable& F = tj.value[TableLabel::F];
    const FTensorTable& dF = tj.derivative[TableLabel::F];
    const double f6 = F.coef(6), f7 = F.coef(7), f8 = F.coef(8);
    L5Residuals r;
    r.t = t;
    r.a = std::abs(j.b1 + j.b3);
    r.b = std::abs(j.da1 + j.da3) + std::max(0.0, -(j.a1 + j.a3));
    r.c = std::abs(2.0 * j.da2 - j.b2);
    r.d = {std::abs(f6), std::abs(f7), std::abs(f8)};
    r.s = {std::abs(t * f6 * f7 + f7 - f6), std::abs(f6 * f6 + t * f6 * f8 + f8 - 2.0 * dF.coef(6)),
           std::abs(f7 * f7 + t * f7 * f8 + 2.0 * dF.coef(7) - f8)};
    out.push_back(r);
  }
  return out;
}

}  // namespace gnat
