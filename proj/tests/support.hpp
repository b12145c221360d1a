#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "oqw/qops.hpp"
#include "oqw/walk.hpp"

namespace oqw::test {

inline constexpr double pi = std::numbers::pi;

using EMatrix = Eigen::MatrixXcd;

inline EMatrix to_eigen(const CMatrix& m) {
  EMatrix e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline CMatrix from_eigen(const EMatrix& e) {
  std::vector<cplx> v;
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) v.push_back(e(i, j));
  return CMatrix(e.rows(), e.cols(), std::move(v));
}

/// Seeded generator for property tests.
struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  double uniform(double lo = 0.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(engine); }
  cplx gaussian() {
    std::normal_distribution<double> g;
    return {g(engine), g(engine)};
  }
  int odd_n(int lo = 3, int hi = 9) { return lo + 2 * std::uniform_int_distribution<int>(0, (hi - lo) / 2)(engine); }
  double angle() { return uniform(0.0, 2.0 * pi); }
  std::vector<cplx> ket(std::size_t dim) {
    std::vector<cplx> v(dim);
    for (auto& a : v) a = gaussian();
    const double nv = norm(v);
    for (auto& a : v) a /= nv;
    return v;
  }
  CMatrix square(std::size_t dim) {
    std::vector<cplx> v(dim * dim);
    for (auto& a : v) a = gaussian();
    return CMatrix(dim, dim, std::move(v));
  }
  CMatrix hermitian(std::size_t dim) {
    const CMatrix a = square(dim);
    return (a + dagger(a)) * cplx{0.5};
  }
  /// Random full-rank mixed state: A A† / Tr.
  DensityMatrix state(int n) {
    const CMatrix a = square(2 * n);
    const CMatrix p = a * dagger(a);
    return DensityMatrix(p * cplx{1.0 / trace(p).real()});
  }
  DensityMatrix pure_state(int n) { return DensityMatrix::pure(PureState(ket(2 * n))); }
  CMatrix pure_coin() {
    const auto c = ket(2);
    return CMatrix::outer(c, c);
  }
};

}  // namespace oqw::test
