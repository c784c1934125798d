#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "gnat/numeric.hpp"

namespace gnat {

// Chart coordinates of a point of the base manifold.
using ChartPoint = Vec;

// Metric-only finite-difference engine. These functions know nothing about
// charts or positivity; ChartedManifold layers those checks on top, and the
// tangent-bundle curvature oracle reuses them on the 2m-dimensional chart of TM.
namespace chart {

using MetricFn = std::function<Mat(const Vec&)>;

// Γ^l_jk = ½ g^{li}(∂_j g_ik + ∂_k g_ij − ∂_i g_jk), exactly symmetric in (j,k).
// Throws SingularMetric when g(x) cannot be inverted.
Christoffel christoffel_symbols(const MetricFn& metric, const Vec& x, double h);

// R^l_ijk = ∂_iΓ^l_jk − ∂_jΓ^l_ik + Γ^l_is Γ^s_jk − Γ^l_js Γ^s_ik
RiemannTensor riemann_tensor(const MetricFn& metric, const Vec& x, double h);

// (∇_w R)^l_ijk from finite differences of R plus connection corrections.
CovariantRiemann nabla_riemann_tensor(const MetricFn& metric, const Vec& x, double h);

// Contractions.
Vec contract(const Christoffel& gamma, const Vec& X, const Vec& Y);                    // Γ(X,Y)
Vec contract(const RiemannTensor& R, const Vec& X, const Vec& Y, const Vec& Z);         // R(X,Y)Z
Vec contract(const CovariantRiemann& NR, const Vec& W, const Vec& X, const Vec& Y, const Vec& Z);

}  // namespace chart

// Everything the lift formulas need from the base at one chart point.
struct PointGeometry {
  Vec x;
  Mat g;
  Mat g_inv;
  Christoffel gamma;
  std::optional<RiemannTensor> riemann;
  std::optional<CovariantRiemann> nabla_riemann;

  int dim() const { return static_cast<int>(x.size()); }
  double inner(const Vec& a, const Vec& b) const { return a.dot(g * b); }
  // ∇_X Y at x for constant-coefficient fields X, Y.
  Vec covariant(const Vec& X, const Vec& Y) const { return chart::contract(gamma, X, Y); }
  // R(X,Y)Z; requires riemann.
  Vec curvature(const Vec& X, const Vec& Y, const Vec& Z) const;
  // (∇_W R)(X,Y)Z; requires nabla_riemann.
  Vec nabla_curvature(const Vec& W, const Vec& X, const Vec& Y, const Vec& Z) const;
};

// Axis-aligned box used to draw random admitted chart points.
struct SampleBox {
  Vec lo;
  Vec hi;
};

// A Riemannian manifold (M, g) in a single chart.
//
// Derivatives are five-point central differences with step fd_step at every
// nesting level: Γ uses one level, R two, ∇R three. Each operation refuses to
// evaluate closer than the stencil reach to the chart boundary.
class ChartedManifold {
 public:
  using MetricFn = chart::MetricFn;
  using DomainFn = std::function<bool(const Vec&)>;

  static constexpr double kDefaultStep = 1e-3;

  ChartedManifold(std::string name, int dim, MetricFn metric, DomainFn domain,
                  double fd_step = kDefaultStep, std::optional<SampleBox> sample_box = std::nullopt);

  const std::string& name() const noexcept { return name_; }
  int dim() const noexcept { return dim_; }
  double fd_step() const noexcept { return fd_step_; }
  const std::optional<SampleBox>& sample_box() const noexcept { return sample_box_; }

  bool contains(const Vec& x) const;
  // True when the whole cube of half-width `margin` around x lies in the chart.
  bool contains_with_margin(const Vec& x, double margin) const;

  // g(x), symmetric and positive definite.
  Mat metric_at(const ChartPoint& x) const;
  // g(x) without the positivity check (still requires x in the chart).
  Mat raw_metric(const Vec& x) const;

  Christoffel christoffel_at(const ChartPoint& x) const;
  RiemannTensor riemann_tensor_at(const ChartPoint& x) const;
  Vec riemann_at(const ChartPoint& x, const Vec& X, const Vec& Y, const Vec& Z) const;
  CovariantRiemann nabla_riemann_tensor_at(const ChartPoint& x) const;
  Vec nabla_riemann_at(const ChartPoint& x, const Vec& W, const Vec& X, const Vec& Y,
                       const Vec& Z) const;

  // order 1: g, Γ; order 2: also R; order 3: also ∇R.
  PointGeometry geometry_at(const ChartPoint& x, int order) const;

  // Uniform point from the sample box, shrunk so that stencils of the given
  // depth stay inside the chart. Throws if no sample box is configured.
  ChartPoint sample_point(std::mt19937_64& rng, int depth = 3) const;

 private:
  void require_margin(const Vec& x, int depth) const;

  std::string name_;
  int dim_;
  MetricFn metric_;
  DomainFn domain_;
  double fd_step_;
  std::optional<SampleBox> sample_box_;
};

// Built-ins: "flat2", "flat3", "sphere2", "halfplane2".
ChartedManifold builtin_manifold(std::string_view name);
std::vector<std::string> builtin_manifold_names();

}  // namespace gnat
