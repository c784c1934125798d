#pragma once

#include <random>

#include "gnat/curvature_lab.hpp"

namespace gnat::testing {

inline Vec gaussian(std::mt19937_64& rng, int m, double scale = 1.0) {
  std::normal_distribution<double> N(0.0, scale);
  Vec v(m);
  for (int i = 0; i < m; ++i) v(i) = N(rng);
  return v;
}

// u with g(u, u) = t at x.
inline Vec tangent_with_t(std::mt19937_64& rng, const ChartedManifold& M, const ChartPoint& x, double t) {
  const Mat g = M.metric_at(x);
  Vec u = gaussian(rng, M.dim());
  return u * std::sqrt(t / u.dot(g * u));
}

inline TangentPoint random_site(std::mt19937_64& rng, const ChartedManifold& M, double t_max) {
  const ChartPoint x = M.sample_point(rng, 3);
  const double t = std::uniform_real_distribution<double>(0.0, t_max)(rng);
  return make_tangent_point(M, x, tangent_with_t(rng, M, x, t));
}

inline LiftVector random_lift(std::mt19937_64& rng, int m) { return {gaussian(rng, m), gaussian(rng, m)}; }

// Low-degree polynomial profile, redrawn until it is Riemannian on [0, 10].
inline MetricProfile random_riemannian_profile(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (;;) {
    const Polynomial a1{1.5 + 0.5 * U(rng), 0.2 * U(rng), 0.02 * U(rng)};
    const Polynomial a2{0.3 * U(rng), 0.1 * U(rng)};
    const Polynomial a3{0.5 * U(rng), 0.1 * U(rng)};
    const Polynomial b1{0.3 * U(rng), 0.05 * U(rng)};
    const Polynomial b2{0.2 * U(rng), 0.02 * U(rng)};
    const Polynomial b3{0.2 * U(rng), 0.02 * U(rng)};
    MetricProfile p = MetricProfile::from_polynomials({a1, a2, a3, b1, b2, b3}, "random");
    if (classify(p) == Classification::Riemannian) return p;
  }
}

// Profile that keeps α1 + α3 ≡ 1 and β ≡ 0 but has α1' ≠ 0, so that table F
// carries nonzero f5..f8 and the bundle is curved over a flat base.
inline MetricProfile curved_fiber_profile() {
  return MetricProfile::from_polynomials({Polynomial{1.0, 1.0}, {}, Polynomial{0.0, -1.0}, {}, {}, {}},
                                         "curved-fiber");
}

inline MetricProfile perturbed_flat_family() {
  auto polys = *preset("flat-family").polynomials();
  polys[static_cast<std::size_t>(Slot::beta2)] = polys[static_cast<std::size_t>(Slot::beta2)] + Polynomial{0.5};
  return MetricProfile::from_polynomials(polys, "flat-family+0.5");
}

}  // namespace gnat::testing
