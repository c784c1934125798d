#include "gnat/base_manifold.hpp"

#include <numbers>

#include "gnat/error.hpp"

namespace gnat {

namespace chart {

namespace {

Vec axis(int dim, int a, double s) {
  Vec e = Vec::Zero(dim);
  e[a] = s;
  return e;
}

Christoffel assemble_christoffel(const Mat& g_inv, const std::vector<Mat>& dg) {
  const int m = static_cast<int>(g_inv.rows());
  Christoffel gamma(m);
  for (int j = 0; j < m; ++j) {
    for (int k = j; k < m; ++k) {
      for (int l = 0; l < m; ++l) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) {
          acc += g_inv(l, i) * (dg[j](i, k) + dg[k](i, j) - dg[i](j, k));
        }
        gamma(l, j, k) = 0.5 * acc;
        gamma(l, k, j) = 0.5 * acc;
      }
    }
  }
  return gamma;
}

}  // namespace

Christoffel christoffel_symbols(const MetricFn& metric, const Vec& x, double h) {
  const int m = static_cast<int>(x.size());
  const Mat g = metric(x);
  Eigen::FullPivLU<Mat> lu(g);
  if (!lu.isInvertible()) throw SingularMetric("metric is singular at the requested point");
  const Mat g_inv = lu.inverse();

  std::vector<Mat> dg;
  dg.reserve(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    dg.push_back(fd::central([&](double s) -> Mat { return metric(x + axis(m, a, s)); }, h));
  }
  return assemble_christoffel(g_inv, dg);
}

RiemannTensor riemann_tensor(const MetricFn& metric, const Vec& x, double h) {
  const int m = static_cast<int>(x.size());
  const Christoffel gamma = christoffel_symbols(metric, x, h);
  std::vector<Christoffel> dgamma;
  dgamma.reserve(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    dgamma.push_back(fd::central(
        [&](double s) { return christoffel_symbols(metric, x + axis(m, a, s), h); }, h));
  }

  RiemannTensor R(m);
  for (int l = 0; l < m; ++l) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        for (int k = 0; k < m; ++k) {
          double quad = 0.0;
          for (int s = 0; s < m; ++s) {
            quad += gamma(l, i, s) * gamma(s, j, k) - gamma(l, j, s) * gamma(s, i, k);
          }
          R(l, i, j, k) = (dgamma[i](l, j, k) - dgamma[j](l, i, k)) + quad;
        }
      }
    }
  }
  return R;
}

CovariantRiemann nabla_riemann_tensor(const MetricFn& metric, const Vec& x, double h) {
  const int m = static_cast<int>(x.size());
  const Christoffel gamma = christoffel_symbols(metric, x, h);
  const RiemannTensor R = riemann_tensor(metric, x, h);

  CovariantRiemann NR(m);
  for (int w = 0; w < m; ++w) {
    const RiemannTensor dR =
        fd::central([&](double s) { return riemann_tensor(metric, x + axis(m, w, s), h); }, h);
    for (int l = 0; l < m; ++l) {
      for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
          for (int k = 0; k < m; ++k) {
            double acc = dR(l, i, j, k);
            for (int s = 0; s < m; ++s) {
              acc += gamma(l, w, s) * R(s, i, j, k);
              acc -= gamma(s, w, i) * R(l, s, j, k);
              acc -= gamma(s, w, j) * R(l, i, s, k);
              acc -= gamma(s, w, k) * R(l, i, j, s);
            }
            NR(w, l, i, j, k) = acc;
          }
        }
      }
    }
  }
  return NR;
}

Vec contract(const Christoffel& gamma, const Vec& X, const Vec& Y) {
  const int m = gamma.dim();
  Vec out = Vec::Zero(m);
  for (int l = 0; l < m; ++l)
    for (int j = 0; j < m; ++j)
      for (int k = 0; k < m; ++k) out[l] += gamma(l, j, k) * X[j] * Y[k];
  return out;
}

Vec contract(const RiemannTensor& R, const Vec& X, const Vec& Y, const Vec& Z) {
  const int m = R.dim();
  Vec out = Vec::Zero(m);
  for (int l = 0; l < m; ++l)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        const double xy = X[i] * Y[j];
        if (xy == 0.0) continue;
        for (int k = 0; k < m; ++k) out[l] += R(l, i, j, k) * xy * Z[k];
      }
  return out;
}

Vec contract(const CovariantRiemann& NR, const Vec& W, const Vec& X, const Vec& Y, const Vec& Z) {
  const int m = NR.dim();
  Vec out = Vec::Zero(m);
  for (int w = 0; w < m; ++w) {
    if (W[w] == 0.0) continue;
    for (int l = 0; l < m; ++l)
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          for (int k = 0; k < m; ++k) out[l] += NR(w, l, i, j, k) * W[w] * X[i] * Y[j] * Z[k];
  }
  return out;
}

}  // namespace chart

Vec PointGeometry::curvature(const Vec& X, const Vec& Y, const Vec& Z) const {
  if (!riemann) throw Error("PointGeometry built without curvature");
  return chart::contract(*riemann, X, Y, Z);
}

Vec PointGeometry::nabla_curvature(const Vec& W, const Vec& X, const Vec& Y, const Vec& Z) const {
  if (!nabla_riemann) throw Error("PointGeometry built without covariant curvature derivative");
  return chart::contract(*nabla_riemann, W, X, Y, Z);
}

ChartedManifold::ChartedManifold(std::string name, int dim, MetricFn metric, DomainFn domain,
                                 double fd_step, std::optional<SampleBox> sample_box)
    : name_(std::move(name)),
      dim_(dim),
      metric_(std::move(metric)),
      domain_(std::move(domain)),
      fd_step_(fd_step),
      sample_box_(std::move(sample_box)) {
  if (dim_ < 2) throw Error("charted manifolds must have dimension >= 2");
  if (!(fd_step_ > 0.0)) throw Error("fd_step must be positive");
  if (!metric_) throw Error("metric function is required");
  if (!domain_) domain_ = [](const Vec&) { return true; };
}

bool ChartedManifold::contains(const Vec& x) const {
  return x.size() == dim_ && x.allFinite() && domain_(x);
}

bool ChartedManifold::contains_with_margin(const Vec& x, double margin) const {
  if (!contains(x)) return false;
  const int corners = 1 << dim_;
  for (int c = 0; c < corners; ++c) {
    Vec y = x;
    for (int a = 0; a < dim_; ++a) y[a] += ((c >> a) & 1) ? margin : -margin;
    if (!domain_(y)) return false;
  }
  return true;
}

Mat ChartedManifold::raw_metric(const Vec& x) const {
  if (!contains(x)) throw OutOfChart("point outside chart of " + name_);
  Mat g = metric_(x);
  if (g.rows() != dim_ || g.cols() != dim_) throw Error("metric function returned wrong shape");
  const double scale = std::max(1.0, max_abs(g));
  if (max_abs(Mat(g - g.transpose())) > 1e-14 * scale) throw Error("metric function is not symmetric");
  return 0.5 * (g + g.transpose());
}

Mat ChartedManifold::metric_at(const ChartPoint& x) const {
  Mat g = raw_metric(x);
  Eigen::LLT<Mat> llt(g);
  if (llt.info() != Eigen::Success) throw NotPositiveDefinite("metric not positive definite on " + name_);
  return g;
}

void ChartedManifold::require_margin(const Vec& x, int depth) const {
  if (!contains_with_margin(x, fd::reach(fd_step_, depth)))
    throw OutOfChart("point too close to the boundary of chart " + name_);
}

Christoffel ChartedManifold::christoffel_at(const ChartPoint& x) const {
  require_margin(x, 1);
  return chart::christoffel_symbols([this](const Vec& y) { return raw_metric(y); }, x, fd_step_);
}

RiemannTensor ChartedManifold::riemann_tensor_at(const ChartPoint& x) const {
  require_margin(x, 2);
  return chart::riemann_tensor([this](const Vec& y) { return raw_metric(y); }, x, fd_step_);
}

Vec ChartedManifold::riemann_at(const ChartPoint& x, const Vec& X, const Vec& Y, const Vec& Z) const {
  return chart::contract(riemann_tensor_at(x), X, Y, Z);
}

CovariantRiemann ChartedManifold::nabla_riemann_tensor_at(const ChartPoint& x) const {
  require_margin(x, 3);
  return chart::nabla_riemann_tensor([this](const Vec& y) { return raw_metric(y); }, x, fd_step_);
}

Vec ChartedManifold::nabla_riemann_at(const ChartPoint& x, const Vec& W, const Vec& X, const Vec& Y,
                                      const Vec& Z) const {
  return chart::contract(nabla_riemann_tensor_at(x), W, X, Y, Z);
}

PointGeometry ChartedManifold::geometry_at(const ChartPoint& x, int order) const {
  PointGeometry geo;
  geo.x = x;
  geo.g = metric_at(x);
  geo.g_inv = geo.g.inverse();
  geo.gamma = christoffel_at(x);
  if (order >= 2) geo.riemann = riemann_tensor_at(x);
  if (order >= 3) geo.nabla_riemann = nabla_riemann_tensor_at(x);
  return geo;
}

ChartPoint ChartedManifold::sample_point(std::mt19937_64& rng, int depth) const {
  if (!sample_box_) throw Error("manifold " + name_ + " has no sample box");
  const double margin = fd::reach(fd_step_, depth);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vec x(dim_);
    for (int a = 0; a < dim_; ++a) {
      const double lo = sample_box_->lo[a] + margin;
      const double hi = sample_box_->hi[a] - margin;
      x[a] = lo + (hi - lo) * unit(rng);
    }
    if (contains_with_margin(x, margin)) return x;
  }
  throw Error("could not sample an admitted point on " + name_);
}

namespace {

ChartedManifold flat(int m) {
  SampleBox box{Vec::Constant(m, -2.0), Vec::Constant(m, 2.0)};
  return ChartedManifold(
      "flat" + std::to_string(m), m, [m](const Vec&) -> Mat { return Mat::Identity(m, m); },
      [](const Vec&) { return true; }, ChartedManifold::kDefaultStep, box);
}

// Unit sphere in (θ, φ): g = dθ² + sin²θ dφ², kept away from the poles.
ChartedManifold sphere2() {
  constexpr double kPole = 0.2;
  SampleBox box{Vec(2), Vec(2)};
  box.lo << 0.3, -std::numbers::pi;
  box.hi << std::numbers::pi - 0.3, std::numbers::pi;
  return ChartedManifold(
      "sphere2", 2,
      [](const Vec& x) -> Mat {
        Mat g = Mat::Zero(2, 2);
        const double s = std::sin(x[0]);
        g(0, 0) = 1.0;
        g(1, 1) = s * s;
        return g;
      },
      [](const Vec& x) { return x[0] > kPole && x[0] < std::numbers::pi - kPole; },
      ChartedManifold::kDefaultStep, box);
}

// Poincaré half-plane g = (dx² + dy²) / y², restricted to y > 0.1.
ChartedManifold halfplane2() {
  SampleBox box{Vec(2), Vec(2)};
  box.lo << -2.0, 0.3;
  box.hi << 2.0, 3.0;
  return ChartedManifold(
      "halfplane2", 2,
      [](const Vec& x) -> Mat { return Mat::Identity(2, 2) / (x[1] * x[1]); },
      [](const Vec& x) { return x[1] > 0.1; }, ChartedManifold::kDefaultStep, box);
}

}  // namespace

ChartedManifold builtin_manifold(std::string_view name) {
  if (name == "flat2") return flat(2);
  if (name == "flat3") return flat(3);
  if (name == "sphere2") return sphere2();
  if (name == "halfplane2") return halfplane2();
  throw ConfigError("unknown manifold '" + std::string(name) + "'");
}

std::vector<std::string> builtin_manifold_names() { return {"flat2", "flat3", "sphere2", "halfplane2"}; }

}  // namespace gnat
