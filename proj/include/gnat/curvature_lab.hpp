#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gnat/connection.hpp"

namespace gnat {

// a1, a2, a3 of an ordered pair of tables, using only their f5..f8 parts.
struct Combinators {
  double a1 = 0, a2 = 0, a3 = 0;
};
Combinators combinators(const FTensorTable& P, const FTensorTable& Q, double t);

// (∇_X P_u)(Y, Z), u held parallel: only the curvature terms f1..f4 survive.
Vec nabla_f_tensor(const FTensorTable& P, const PointGeometry& geo, const Vec& u, const Vec& X, const Vec& Y,
                   const Vec& Z);
Vec nabla_f_tensor(const MetricProfile& p, const ChartedManifold& M, const ChartPoint& x, const Vec& u,
                   TableLabel label, const Vec& X, const Vec& Y, const Vec& Z);

// d(P_(X,Z))_u(Y): slot-replacement sum plus the chain-rule terms
// 2 f_i'(t) g(u, Y) T^i(u; X, Z). `dP` holds the t-derivatives of the coefficients.
Vec d_f_tensor_u(const FTensorTable& P, const FTensorTable& dP, const PointGeometry& geo, const Vec& u,
                 const Vec& X, const Vec& Z, const Vec& Y);
Vec d_f_tensor_u(const MetricProfile& p, const ChartedManifold& M, const ChartPoint& x, const Vec& u,
                 TableLabel label, const Vec& X, const Vec& Z, const Vec& Y);

// Everything the curvature formulas need at one point (x, u) of TM.
struct CurvatureSite {
  TangentPoint point;
  PointGeometry geo;  // order 3
  ProfileJet jet;
  TableJet tables;

  static CurvatureSite make(const MetricProfile& p, const ChartedManifold& M, const ChartPoint& x, const Vec& u);
  const Vec& u() const { return point.u; }
  double t() const { return point.t; }
};

// R̄(X^a, Y^b) Z^c with (a, b, c) spelled out by the case name.
enum class CurvatureCase { hhh, hhv, hvh, hvv, vvh, vvv };
inline constexpr std::array<CurvatureCase, 6> kAllCurvatureCases{CurvatureCase::hhh, CurvatureCase::hhv,
                                                                 CurvatureCase::hvh, CurvatureCase::hvv,
                                                                 CurvatureCase::vvh, CurvatureCase::vvv};
std::string_view to_string(CurvatureCase c);

struct CurvatureRequest {
  CurvatureCase kase = CurvatureCase::hhh;
  Vec X, Y, Z;
};

LiftVector r_bar(const CurvatureSite& site, const CurvatureRequest& req);
LiftVector r_bar(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P,
                 const CurvatureRequest& req);
// R̄(A, B) C for arbitrary lift vectors, by multilinearity.
LiftVector r_bar(const CurvatureSite& site, const LiftVector& A, const LiftVector& B, const LiftVector& C);

// R̄(A, B) C from finite differences of G written in the (x, u) chart of TM.
LiftVector coordinate_curvature_oracle(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P,
                                       const LiftVector& A, const LiftVector& B, const LiftVector& C);

inline constexpr double kPlaneThreshold = 1e-10;

// G(R̄(A,B)B, A) / (G(A,A)G(B,B) − G(A,B)²). Throws DegeneratePlane.
double sectional_curvature(const CurvatureSite& site, const LiftVector& A, const LiftVector& B);
double sectional_curvature(const MetricProfile& p, const ChartedManifold& M, const TangentPoint& P,
                           const LiftVector& A, const LiftVector& B);

enum class PlaneKind { horizontal, vertical, mixed, general };
std::string_view to_string(PlaneKind k);

struct CurvatureSample {
  int site = 0;
  int plane = 0;
  PlaneKind kind = PlaneKind::horizontal;
  double t = 0;
  double K = 0;
  double r_bar_max = 0;  // ‖R̄(A, B) C‖∞ for the plane and a random third vector
};

enum class ScanVerdict { flat, constant_nonzero, non_constant, inconclusive };
std::string_view to_string(ScanVerdict v);

struct ScanOptions {
  int n_sites = 8;
  int n_planes = 6;
  std::uint64_t seed = 1;
  double tolerance = 1e-6;
  int workers = 0;  // 0: hardware concurrency
};

struct ScanReport {
  std::vector<CurvatureSample> samples;
  std::vector<std::string> warnings;
  int skipped_planes = 0;
  double K_min = 0, K_max = 0, spread = 0;
  double r_bar_max = 0;
  ScanVerdict verdict = ScanVerdict::inconclusive;
  // Filled for constant verdicts: max over sites of the three residuals of the
  // combinator system with K, and |K (α1+α3)(0)|.
  double K_estimate = 0;
  std::array<double, 3> k02_residual{};
  double rp2_residual = 0;
};

// Samples sectional curvatures at n_sites points with |u| cycling through
// {0, 0.5, 1, 2}. Each site draws from its own seed, so the result does not
// depend on the number of workers.
ScanReport constant_curvature_scan(const MetricProfile& p, const ChartedManifold& M, const ScanOptions& opts);

struct FlatnessCondition {
  std::string name;  // "i", "ii", "iii", "iv"
  double residual = 0;
  double tolerance = 0;
  bool pass = true;
  std::string detail;
};

struct FlatnessResult {
  bool flat = true;
  std::vector<FlatnessCondition> conditions;
  std::vector<std::string> violated() const;
};

// The four conditions characterizing flat Riemannian g-natural metrics.
FlatnessResult flatness_check_tc(const MetricProfile& p, const ChartedManifold& M,
                                 const std::vector<double>& t_samples, std::uint64_t seed = 1);

// Residuals of the necessary conditions a)–d) and of the system satisfied by
// (f6, f7, f8) of table F on a flat bundle, at one t.
struct L5Residuals {
  double t = 0;
  double a = 0;   // |β1 + β3|
  double b = 0;   // |(α1+α3)'| plus any failure of α1+α3 > 0
  double c = 0;   // |2α2' − β2|
  std::array<double, 3> d{};   // |f6|, |f7|, |f8| of F
  std::array<double, 3> s{};   // the three equations of the (f6, f7, f8) system
};

// The third system equation is t f7 f8 + f7² + 2 f7' − f8 = 0; see CORRECTIONS.md.
std::vector<L5Residuals> lemma_l5_residuals(const MetricProfile& p, const std::vector<double>& t_samples);

}  // namespace gnat
