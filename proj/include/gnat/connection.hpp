#pragma once

#include <array>
#include <string_view>

#include "gnat/bundle_metric.hpp"

namespace gnat {

enum class TableLabel { A = 0, B, C, D, E, F };
inline constexpr std::array<TableLabel, 6> kAllTables{TableLabel::A, TableLabel::B, TableLabel::C,
                                                      TableLabel::D, TableLabel::E, TableLabel::F};
std::string_view to_string(TableLabel l);

// Coefficients f_1..f_8 of P(u; X, Y) = Σ f_i(|u|²) T^i(u; X, Y) at one t.
struct FTensorTable {
  TableLabel label = TableLabel::A;
  std::array<double, 8> f{};

  // 1-based, matching the T^i numbering.
  double coef(int i) const { return f[static_cast<std::size_t>(i - 1)]; }
  double& coef(int i) { return f[static_cast<std::size_t>(i - 1)]; }
};

// The six tables at one t.
struct TableSet {
  double t = 0.0;
  std::array<FTensorTable, 6> tables{};

  const FTensorTable& operator[](TableLabel l) const { return tables[static_cast<std::size_t>(l)]; }
  FTensorTable& operator[](TableLabel l) { return tables[static_cast<std::size_t>(l)]; }
};

// Tables and their t-derivatives; the derivatives need second derivatives of
// the profile, so they are taken by finite differences in t.
struct TableJet {
  TableSet value;
  TableSet derivative;
};

FTensorTable coeff_table(TableLabel label, const MetricProfile& p, double t);
TableSet coeff_tables(const ProfileJet& j);
TableSet coeff_tables(const MetricProfile& p, double t);
TableJet coeff_table_jet(const MetricProfile& p, double t, double h = 1e-4);

// T^1..T^8 at (x, u). T^1..T^4 need geo.riemann.
//   T1 = R(X,u)Y  T2 = R(Y,u)X  T3 = R(X,Y)u  T4 = g(R(X,u)Y,u)u
//   T5 = g(X,u)Y  T6 = g(Y,u)X  T7 = g(X,Y)u  T8 = g(X,u)g(Y,u)u
Vec t_basis(int i, const PointGeometry& geo, const Vec& u, const Vec& X, const Vec& Y);
Vec t_basis(int i, const ChartedManifold& M, const ChartPoint& x, const Vec& u, const Vec& X, const Vec& Y);

// P(u; X, Y) for one table.
Vec apply_table(const FTensorTable& P, const PointGeometry& geo, const Vec& u, const Vec& X, const Vec& Y);

// Which lifts are being differentiated: ∇̄_{X^a} Y^b with (a, b) the two letters.
enum class LiftPair { hh, hv, vh, vv };
inline constexpr std::array<LiftPair, 4> kAllLiftPairs{LiftPair::hh, LiftPair::hv, LiftPair::vh, LiftPair::vv};
std::string_view to_string(LiftPair k);

// Levi-Civita connection of G on lifts of constant-coefficient fields X, Y.
LiftVector nabla_bar(const TableSet& tables, const PointGeometry& geo, const Vec& u, LiftPair kind,
                     const Vec& X, const Vec& Y);
LiftVector nabla_bar(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P, LiftPair kind,
                     const Vec& X, const Vec& Y);

// Coordinates on TM and lift fields of constant-coefficient vector fields.
namespace tm {

// z = (x, u) stacked.
Vec point(const TangentPoint& P);

// Coordinate components (ξ, η) of the lift vector A at (x, u): ξ = h, η = v − Γ(u, h).
Vec to_coordinates(const Christoffel& gamma, const Vec& u, const LiftVector& A);
LiftVector from_coordinates(const Christoffel& gamma, const Vec& u, const Vec& w);

// The field z ↦ w^h (horizontal) or z ↦ w^v (vertical) for fixed chart components w.
struct LiftField {
  bool horizontal = true;
  Vec w;

  LiftVector lift() const { return horizontal ? LiftVector::horizontal(w) : LiftVector::vertical(w); }
  Vec components(const ChartedManifold& M, const Vec& z) const;
};

LiftField field_for(LiftPair kind, bool first, const Vec& w);

}  // namespace tm

struct KoszulOptions {
  double step = 1e-3;  // five-point central differences on (x, u)
};

// ∇̄ from the Koszul formula with numerical derivatives and brackets of lift
// fields, solved through the closed-form inverse of G.
LiftVector koszul_oracle(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P, LiftPair kind,
                         const Vec& X, const Vec& Y, const KoszulOptions& opts = {});

// Lie bracket of two lift fields at P, by finite differences on TM coordinates,
// returned in the lift frame.
LiftVector numeric_bracket(const ChartedManifold& M, const TangentPoint& P, const tm::LiftField& A,
                           const tm::LiftField& B, double step = 1e-3);

// ‖∇̄_A B − ∇̄_B A − [A, B]‖∞ for the closed form against a numeric bracket,
// divided by max(1, the largest of the three terms).
double torsion_residual(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P, LiftPair kind,
                        const Vec& X, const Vec& Y, double step = 1e-3);

// |A(G(B,C)) − G(∇̄_A B, C) − G(B, ∇̄_A C)| / max(1, |A(G(B,C))|) with the
// derivative along A taken numerically.
double metric_compatibility_residual(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P,
                                     const tm::LiftField& A, const tm::LiftField& B, const tm::LiftField& C,
                                     double step = 1e-3);

// max-norm relative difference used for oracle comparisons.
double relative_residual(const LiftVector& a, const LiftVector& reference);

}  // namespace gnat
