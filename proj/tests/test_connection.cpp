#include <gtest/gtest.h>

#include "gnat/error.hpp"
#include "support.hpp"

using namespace gnat;
using gnat::testing::gaussian;

namespace {

Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

// Sites with |u| ≤ 2 so that the oracle steps stay well resolved.
TangentPoint site(std::mt19937_64& rng, const ChartedManifold& M) { return gnat::testing::random_site(rng, M, 4.0); }

}  // namespace

TEST(TBasis, Examples) {
  const auto F = builtin_manifold("flat2");
  std::mt19937_64 rng(31);
  const Vec x = Vec::Zero(2), u = gaussian(rng, 2), X = gaussian(rng, 2), Y = gaussian(rng, 2);
  for (int i = 1; i <= 4; ++i) EXPECT_EQ(max_abs(t_basis(i, F, x, u, X, Y)), 0.0);
  EXPECT_EQ(t_basis(7, F, x, vec({0.0, 2.0}), vec({1.0, 0.0}), vec({1.0, 0.0})), vec({0.0, 2.0}));

  const auto S = builtin_manifold("sphere2");
  const Vec p = vec({1.0, 0.5});
  const Mat g = S.metric_at(p);
  const Vec uu = vec({0.0, 0.7});
  const Vec Xo = vec({1.0 / std::sqrt(g(0, 0)), 0.0});  // unit and orthogonal to u
  const double val = Xo.dot(g * t_basis(1, S, p, uu, Xo, uu));
  EXPECT_NEAR(val, uu.dot(g * uu), 1e-6);
}

TEST(TBasis, MatchesDefinitions) {
  std::mt19937_64 rng(32);
  const auto M = builtin_manifold("halfplane2");
  const ChartPoint x = M.sample_point(rng, 2);
  const PointGeometry geo = M.geometry_at(x, 2);
  const Vec u = gaussian(rng, 2), X = gaussian(rng, 2), Y = gaussian(rng, 2);
  const Vec R1 = geo.curvature(X, u, Y);
  EXPECT_LE(max_abs(Vec(t_basis(1, geo, u, X, Y) - R1)), 1e-14);
  EXPECT_LE(max_abs(Vec(t_basis(2, geo, u, X, Y) - geo.curvature(Y, u, X))), 1e-14);
  EXPECT_LE(max_abs(Vec(t_basis(3, geo, u, X, Y) - geo.curvature(X, Y, u))), 1e-14);
  EXPECT_LE(max_abs(Vec(t_basis(4, geo, u, X, Y) - geo.inner(R1, u) * u)), 1e-14);
  EXPECT_LE(max_abs(Vec(t_basis(5, geo, u, X, Y) - geo.inner(X, u) * Y)), 1e-14);
  EXPECT_LE(max_abs(Vec(t_basis(6, geo, u, X, Y) - geo.inner(Y, u) * X)), 1e-14);
  EXPECT_LE(max_abs(Vec(t_basis(8, geo, u, X, Y) - geo.inner(X, u) * geo.inner(Y, u) * u)), 1e-14);
}

TEST(Tables, SasakiVanish) {
  for (double t : {0.0, 1.0, 5.0}) {
    const TableSet s = coeff_tables(preset("sasaki"), t);
    for (TableLabel l : kAllTables)
      for (int i = 1; i <= 8; ++i) {
        // Sasaki keeps only f3 of B and f2 of C, both −½.
        const bool kept = (l == TableLabel::B && i == 3) || (l == TableLabel::C && i == 2);
        const double expect = kept ? -0.5 : 0.0;
        EXPECT_EQ(s[l].coef(i), expect) << to_string(l) << i;
      }
  }
}

TEST(Tables, FlatFamilyValues) {
  const MetricProfile p = preset("flat-family");
  EXPECT_NEAR(coeff_table(TableLabel::C, p, 0.0).coef(6), 0.0, 1e-15);
  EXPECT_NEAR(coeff_table(TableLabel::E, p, 1.0).coef(5), 2.0, 1e-14);
  EXPECT_NEAR(coeff_table(TableLabel::E, p, 1.0).coef(6), 2.0, 1e-14);
}

TEST(Tables, StructuralZeros) {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 5; ++k) {
    const MetricProfile p = gnat::testing::random_riemannian_profile(rng);
    const TableSet s = coeff_tables(p, 2.0 * k);
    for (TableLabel l : {TableLabel::E, TableLabel::F})
      for (int i = 1; i <= 4; ++i) EXPECT_EQ(s[l].coef(i), 0.0);
    EXPECT_EQ(s[TableLabel::C].coef(3), 0.0);
    EXPECT_EQ(s[TableLabel::D].coef(3), 0.0);
  }
}

TEST(Tables, DegenerateThrows) {
  const MetricProfile p = MetricProfile::from_polynomials({Polynomial{1.0}, Polynomial{1.0}, {}, {}, {}, {}}, "x");
  EXPECT_THROW(coeff_tables(p, 1.0), DegenerateAt);
}

TEST(Tables, JetDerivativeMatchesDirectDifference) {
  std::mt19937_64 rng(34);
  const MetricProfile p = gnat::testing::random_riemannian_profile(rng);
  for (double t : {0.0, 1e-5, 2.0}) {
    const TableJet j = coeff_table_jet(p, t);
    const double h = 1e-3;
    for (TableLabel l : kAllTables)
      for (int i = 1; i <= 8; ++i) {
        const double d = fd::forward([&](double s) { return coeff_table(l, p, t + s).coef(i); }, h);
        EXPECT_NEAR(j.derivative[l].coef(i), d, 1e-6 * std::max(1.0, std::abs(d)));
      }
  }
}

TEST(NablaBar, SasakiFlatVanishes) {
  std::mt19937_64 rng(35);
  const auto M = builtin_manifold("flat3");
  const TangentPoint P = site(rng, M);
  for (LiftPair k : kAllLiftPairs) {
    EXPECT_EQ(nabla_bar(preset("sasaki"), M, P, k, gaussian(rng, 3), gaussian(rng, 3)).max_abs(), 0.0);
    EXPECT_LE(koszul_oracle(preset("sasaki"), M, P, k, gaussian(rng, 3), gaussian(rng, 3)).max_abs(), 1e-9);
  }
}

TEST(NablaBar, SasakiSphereHorizontal) {
  std::mt19937_64 rng(36);
  const auto M = builtin_manifold("sphere2");
  const TangentPoint P = site(rng, M);
  const PointGeometry geo = M.geometry_at(P.x, 2);
  const Vec X = gaussian(rng, 2), Y = gaussian(rng, 2);
  const LiftVector r = nabla_bar(preset("sasaki"), M, P, LiftPair::hh, X, Y);
  EXPECT_LE(max_abs(Vec(r.h - geo.covariant(X, Y))), 1e-12);
  EXPECT_LE(max_abs(Vec(r.v + 0.5 * geo.curvature(X, Y, P.u))), 1e-12);
}

TEST(NablaBar, FlatFamilyVerticalPair) {
  const auto M = builtin_manifold("flat2");
  const TangentPoint P = make_tangent_point(M, Vec::Zero(2), vec({1.0, 0.0}));
  const Vec e2 = vec({0.0, 1.0});
  const LiftVector r = nabla_bar(preset("flat-family"), M, P, LiftPair::vv, e2, e2);
  const double f7 = coeff_table(TableLabel::E, preset("flat-family"), 1.0).coef(7);
  EXPECT_NEAR(r.h(0), f7, 1e-14);
  EXPECT_NEAR(r.h(1), 0.0, 1e-14);
}

TEST(NablaBar, VerticalHorizontalSwapsArguments) {
  // ∇̄_{X^v} Y^h uses C and D with (Y, X); a nonsymmetric table exposes a swap.
  std::mt19937_64 rng(37);
  const MetricProfile p = gnat::testing::random_riemannian_profile(rng);
  const auto M = builtin_manifold("flat2");
  const TangentPoint P = site(rng, M);
  const Vec X = gaussian(rng, 2), Y = gaussian(rng, 2);
  const LiftVector a = nabla_bar(p, M, P, LiftPair::vh, X, Y);
  const LiftVector b = nabla_bar(p, M, P, LiftPair::hv, Y, X);
  // On a flat chart with constant fields [X^v, Y^h] = 0, so the two agree.
  EXPECT_LE((a - b).max_abs(), 1e-12);
  const LiftVector o = koszul_oracle(p, M, P, LiftPair::vh, X, Y);
  EXPECT_LE(relative_residual(a, o), 1e-5);
}

TEST(Koszul, MatchesClosedForm) {
  std::mt19937_64 rng(38);
  std::vector<MetricProfile> profiles{preset("flat-family"), preset("scaled-sasaki"),
                                      gnat::testing::random_riemannian_profile(rng)};
  for (const auto& name : builtin_manifold_names()) {
    const auto M = builtin_manifold(name);
    for (const auto& p : profiles)
      for (int k = 0; k < 8; ++k) {
        const LiftPair kind = kAllLiftPairs[static_cast<std::size_t>(k % 4)];
        const TangentPoint P = site(rng, M);
        const Vec X = gaussian(rng, M.dim()), Y = gaussian(rng, M.dim());
        const LiftVector closed = nabla_bar(p, M, P, kind, X, Y);
        const LiftVector oracle = koszul_oracle(p, M, P, kind, X, Y);
        EXPECT_LE(relative_residual(closed, oracle), 1e-5) << name << " " << p.label() << " " << to_string(kind);
      }
  }
}

TEST(Koszul, SasakiSphereVerticalHorizontal) {
  std::mt19937_64 rng(39);
  const auto M = builtin_manifold("sphere2");
  for (int k = 0; k < 5; ++k) {
    const TangentPoint P = site(rng, M);
    const Vec X = gaussian(rng, 2), Y = gaussian(rng, 2);
    EXPECT_LE(relative_residual(nabla_bar(preset("sasaki"), M, P, LiftPair::vh, X, Y),
                                koszul_oracle(preset("sasaki"), M, P, LiftPair::vh, X, Y)),
              1e-5);
  }
}

TEST(Coordinates, RoundTrip) {
  std::mt19937_64 rng(40);
  const auto M = builtin_manifold("sphere2");
  const TangentPoint P = site(rng, M);
  const Christoffel G = M.christoffel_at(P.x);
  const LiftVector A = gnat::testing::random_lift(rng, 2);
  EXPECT_LE((tm::from_coordinates(G, P.u, tm::to_coordinates(G, P.u, A)) - A).max_abs(), 1e-14);
}

TEST(Bracket, LiftBracketRules) {
  std::mt19937_64 rng(41);
  const auto M = builtin_manifold("halfplane2");
  const TangentPoint P = site(rng, M);
  const PointGeometry geo = M.geometry_at(P.x, 2);
  const Vec X = gaussian(rng, 2), Y = gaussian(rng, 2);
  // Constant-coefficient fields commute on the base, so [X^h, Y^h] = −v{R(X,Y)u}
  // and [X^h, Y^v] = (∇_X Y)^v.
  const LiftVector hh = numeric_bracket(M, P, {true, X}, {true, Y});
  EXPECT_LE(max_abs(hh.h), 1e-7);
  EXPECT_LE(max_abs(Vec(hh.v + geo.curvature(X, Y, P.u))), 1e-6);
  const LiftVector hv = numeric_bracket(M, P, {true, X}, {false, Y});
  EXPECT_LE(max_abs(hv.h), 1e-7);
  EXPECT_LE(max_abs(Vec(hv.v - geo.covariant(X, Y))), 1e-7);
  EXPECT_LE(numeric_bracket(M, P, {false, X}, {false, Y}).max_abs(), 1e-7);
}

TEST(Torsion, FreeForAllKinds) {
  std::mt19937_64 rng(42);
  const MetricProfile p = gnat::testing::random_riemannian_profile(rng);
  for (const auto& name : builtin_manifold_names()) {
    const auto M = builtin_manifold(name);
    for (LiftPair kind : kAllLiftPairs) {
      const TangentPoint P = site(rng, M);
      EXPECT_LE(torsion_residual(p, M, P, kind, gaussian(rng, M.dim()), gaussian(rng, M.dim())), 1e-8)
          << name << " " << to_string(kind);
    }
  }
}

TEST(Compatibility, RandomConfigurations) {
  std::mt19937_64 rng(43);
  for (const auto& pname : preset_names()) {
    const MetricProfile p = preset(pname);
    for (const auto& name : builtin_manifold_names()) {
      const auto M = builtin_manifold(name);
      const int m = M.dim();
      for (int k = 0; k < 30; ++k) {
        const TangentPoint P = site(rng, M);
        const tm::LiftField A{k % 2 == 0, gaussian(rng, m)}, B{k % 3 == 0, gaussian(rng, m)},
            C{k % 5 < 2, gaussian(rng, m)};
        EXPECT_LE(metric_compatibility_residual(p, M, P, A, B, C), 1e-5) << pname << " " << name;
      }
    }
  }
}

TEST(Connection, DegenerateThrows) {
  const MetricProfile p = MetricProfile::from_polynomials({Polynomial{1.0}, Polynomial{1.0}, {}, {}, {}, {}}, "x");
  const auto M = builtin_manifold("flat2");
  const TangentPoint P = make_tangent_point(M, Vec::Zero(2), vec({1.0, 0.0}));
  EXPECT_THROW(nabla_bar(p, M, P, LiftPair::hh, vec({1.0, 0.0}), vec({0.0, 1.0})), DegenerateAt);
}
