#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cassert>
#include <cmath>
#include <type_traits>
#include <vector>

namespace gnat {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Cube-shaped tensor with every index running over [0, dim).
// Storage is row-major in the index order given to operator().
template <int Rank>
class CubeTensor {
 public:
  CubeTensor() = default;
  explicit CubeTensor(int dim) : dim_(dim), data_(static_cast<std::size_t>(ipow(dim, Rank)), 0.0) {}

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return data_.size(); }

  template <typename... I>
  double& operator()(I... idx) {
    static_assert(sizeof...(I) == Rank);
    return data_[offset(idx...)];
  }
  template <typename... I>
  double operator()(I... idx) const {
    static_assert(sizeof...(I) == Rank);
    return data_[offset(idx...)];
  }

  std::vector<double>& raw() noexcept { return data_; }
  const std::vector<double>& raw() const noexcept { return data_; }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  CubeTensor& operator+=(const CubeTensor& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  CubeTensor& operator-=(const CubeTensor& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  CubeTensor& operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
  }
  friend CubeTensor operator+(CubeTensor a, const CubeTensor& b) { return a += b; }
  friend CubeTensor operator-(CubeTensor a, const CubeTensor& b) { return a -= b; }
  friend CubeTensor operator*(double s, CubeTensor a) { return a *= s; }

 private:
  static constexpr int ipow(int b, int e) { return e == 0 ? 1 : b * ipow(b, e - 1); }

  template <typename... I>
  std::size_t offset(I... idx) const {
    std::size_t off = 0;
    for (int i : {static_cast<int>(idx)...}) {
      assert(i >= 0 && i < dim_);
      off = off * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    }
    return off;
  }

  int dim_ = 0;
  std::vector<double> data_;
};

// Gamma(l, j, k) = Γ^l_jk
using Christoffel = CubeTensor<3>;
// R(l, i, j, k) = R^l_ijk, so that (R(X,Y)Z)^l = R^l_ijk X^i Y^j Z^k
using RiemannTensor = CubeTensor<4>;
// NR(w, l, i, j, k) = (∇_w R)^l_ijk
using CovariantRiemann = CubeTensor<5>;

namespace fd {

// Fourth-order five-point central stencil for d/ds f(s) at s = 0.
// f may return double, an Eigen object, or a CubeTensor.
template <typename F>
auto central(F&& f, double h) {
  using R = std::decay_t<decltype(f(0.0))>;
  R m2 = f(-2.0 * h);
  R m1 = f(-h);
  R p1 = f(h);
  R p2 = f(2.0 * h);
  if constexpr (std::is_arithmetic_v<R>) {
    return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
  } else {
    R out = (1.0 / (12.0 * h)) * (m2 - 8.0 * m1 + 8.0 * p1 - p2);
    return out;
  }
}

// Fourth-order forward stencil, for functions only defined for s >= 0.
template <typename F>
auto forward(F&& f, double h) {
  using R = std::decay_t<decltype(f(0.0))>;
  R f0 = f(0.0);
  R f1 = f(h);
  R f2 = f(2.0 * h);
  R f3 = f(3.0 * h);
  R f4 = f(4.0 * h);
  if constexpr (std::is_arithmetic_v<R>) {
    return (-25.0 * f0 + 48.0 * f1 - 36.0 * f2 + 16.0 * f3 - 3.0 * f4) / (12.0 * h);
  } else {
    R out = (1.0 / (12.0 * h)) * (-25.0 * f0 + 48.0 * f1 - 36.0 * f2 + 16.0 * f3 - 3.0 * f4);
    return out;
  }
}

// How far a stencil of the given nesting depth reaches away from the center.
inline double reach(double h, int depth) { return 2.0 * h * depth; }

}  // namespace fd

inline double max_abs(const Vec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }
inline double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace gnat
