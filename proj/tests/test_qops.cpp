#include <Eigen/Eigenvalues>
#include <algorithm>

#include "oqw/spectral.hpp"
#include "support.hpp"

using namespace oqw;
using namespace oqw::test;

namespace {

std::vector<double> eigen_eigenvalues(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<EMatrix> es(to_eigen(h));
  const auto v = es.eigenvalues();
  return {v.data(), v.data() + v.size()};
}

CMatrix projector(int n, int x) {
  std::vector<cplx> d(n, 0.0);
  d[x - 1] = 1.0;
  return CMatrix::diagonal(d);
}

}  // namespace

TEST_CASE("BasisIndex flat is a bijection") {
  for (int n : {3, 5, 7}) {
    std::vector<bool> seen(2 * n, false);
    for (int x = 1; x <= n; ++x) {
      for (int c = 0; c <= 1; ++c) {
        const BasisIndex b{x, c};
        const auto f = b.flat();
        REQUIRE(f < seen.size());
        CHECK_FALSE(seen[f]);
        seen[f] = true;
        const auto back = BasisIndex::from_flat(f);
        CHECK(back.x == x);
        CHECK(back.c == c);
      }
    }
  }
}

TEST_CASE("CMatrix rejects mismatched shapes") {
  CHECK_THROWS_AS(CMatrix(2, 2, std::vector<cplx>(3)), DimensionError);
  CHECK_THROWS_AS(CMatrix::identity(2) * CMatrix::identity(3), DimensionError);
  CHECK_THROWS_AS(CMatrix::identity(2) + CMatrix::identity(3), DimensionError);
}

TEST_CASE("kron") {
  CHECK(max_abs_diff(kron(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4)) == 0.0);

  const CMatrix k = kron(projector(3, 1), pauli::y());
  REQUIRE(k.rows() == 6);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 6; ++j) {
      const cplx expected = (i < 2 && j < 2) ? pauli::y()(i, j) : cplx{0.0};
      CHECK(std::abs(k(i, j) - expected) == 0.0);
    }

  auto ev = hermitian_eigenvalues(kron(pauli::x(), pauli::z()));
  const auto oracle = eigen_eigenvalues(kron(pauli::x(), pauli::z()));
  const std::vector<double> expected{-1, -1, 1, 1};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(ev[i] == doctest::Approx(expected[i]).epsilon(1e-12));
    CHECK(oracle[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
}

TEST_CASE("kron matches Eigen's Kronecker layout on random blocks") {
  Rng rng(11);
  const CMatrix a = rng.square(3);
  const CMatrix b = rng.square(2);
  const CMatrix k = kron(a, b);
  const EMatrix ea = to_eigen(a), eb = to_eigen(b);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int r = 0; r < 2; ++r)
        for (int s = 0; s < 2; ++s) CHECK(std::abs(k(2 * i + r, 2 * j + s) - ea(i, j) * eb(r, s)) < 1e-15);
}

TEST_CASE("dagger") {
  CHECK(max_abs_diff(dagger(CMatrix::identity(4)), CMatrix::identity(4)) == 0.0);
  Rng rng(1);
  const CMatrix a = rng.square(5);
  CHECK(max_abs_diff(dagger(dagger(a)), a) == 0.0);
  CHECK((to_eigen(dagger(a)) - to_eigen(a).adjoint()).cwiseAbs().maxCoeff() == 0.0);
  for (int n : {3, 5, 7, 9}) {
    const CMatrix u = build_walk_unitary(n);
    CHECK(max_abs_diff(dagger(u) * u, CMatrix::identity(2 * n)) < 1e-12);
  }
}

TEST_CASE("matrix product agrees with Eigen") {
  Rng rng(2);
  const CMatrix a = rng.square(6), b = rng.square(6);
  CHECK((to_eigen(a * b) - to_eigen(a) * to_eigen(b)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("hs_inner") {
  for (int n : {3, 5, 7}) {
    CHECK(hs_inner(CMatrix::identity(2 * n), CMatrix::identity(2 * n)) == cplx{2.0 * n});
    const cplx overlap = hs_inner(identity_operator(n), reflection_sigma_y_operator(n));
    CHECK(std::abs(overlap) < 1e-12);
  }
  CHECK(std::abs(hs_inner(pauli::y(), pauli::y()) - cplx{2.0}) < 1e-15);
}

TEST_CASE("partial traces") {
  const int n = 3;
  const CMatrix c0 = CMatrix::outer(std::vector<cplx>{1, 0}, std::vector<cplx>{1, 0});
  const auto prod = DensityMatrix::product(n, 3, c0);
  CHECK(max_abs_diff(partial_trace_position(prod.matrix(), n), c0) == 0.0);
  CHECK(max_abs_diff(partial_trace_coin(prod.matrix(), n), projector(n, 3)) == 0.0);

  const auto mix = DensityMatrix::maximally_mixed(n);
  CHECK(max_abs_diff(partial_trace_position(mix.matrix(), n), CMatrix::identity(2) * cplx{0.5}) < 1e-15);
  CHECK(max_abs_diff(partial_trace_coin(mix.matrix(), n), CMatrix::identity(n) * cplx{1.0 / n}) < 1e-15);

  // Dark state reduced coin: (1/(1+b)) [[1, c*],[c, b]] with c = (chi_k + chi_-k)/2 - 1, b = 1 - 2 Re c.
  const auto dark = dark_states(n);
  const auto& phi = dark.front();
  const cplx chi_k = momentum_mode(n, 1).chi;
  const cplx chi_mk = momentum_mode(n, n - 1).chi;
  const cplx c = 0.5 * (chi_k + chi_mk) - 1.0;
  const double bb = 1.0 - 2.0 * c.real();
  const CMatrix rc = partial_trace_position(CMatrix::outer(phi.vector.amplitudes(), phi.vector.amplitudes()), n);
  const CMatrix expected = CMatrix(2, 2, std::vector<cplx>{1.0, std::conj(c), c, bb}) * cplx{1.0 / (1.0 + bb)};
  CHECK(max_abs_diff(rc, expected) < 1e-12);

  // Equal-phase stationary state has uniform position marginal.
  for (double xi_coin : {0.0, 0.3, 1.0}) {
    const double s = std::sqrt(xi_coin);
    const std::vector<cplx> coin{std::sqrt(1 - xi_coin), cplx{0, s}};
    const auto st = stationary_equal_phases(DensityMatrix::product(n, n, CMatrix::outer(coin, coin)), n);
    const CMatrix pos = partial_trace_coin(st.state.matrix(), n);
    for (int x = 0; x < n; ++x) CHECK(std::abs(pos(x, x) - 1.0 / n) < 1e-12);
  }
}

TEST_CASE("partial transpose") {
  const int n = 3;
  const auto mix = DensityMatrix::maximally_mixed(n);
  CHECK(max_abs_diff(partial_transpose_coin(mix.matrix(), n), mix.matrix()) == 0.0);
  CHECK(hermitian_eigenvalues(partial_transpose_coin(mix.matrix(), n)).front() == doctest::Approx(1.0 / 6));

  // Bell state (|1,0> + |2,1>)/sqrt2 on a two-site fixture.
  const double h = 1.0 / std::sqrt(2.0);
  const std::vector<cplx> bell{h, 0, 0, h};
  const CMatrix pt = partial_transpose_coin(CMatrix::outer(bell, bell), 2);
  CHECK(hermitian_eigenvalues(pt).front() == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(eigen_eigenvalues(pt).front() == doctest::Approx(-0.5).epsilon(1e-12));

  // Product states stay PPT.
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto rho = DensityMatrix::product(5, 1 + i % 5, rng.pure_coin());
    CHECK(hermitian_eigenvalues(partial_transpose_coin(rho.matrix(), 5)).front() > -1e-12);
  }
}

TEST_CASE("hermitian_eigs") {
  auto sy = hermitian_eigenvalues(pauli::y());
  CHECK(sy[0] == doctest::Approx(-1.0));
  CHECK(sy[1] == doctest::Approx(1.0));

  const std::vector<cplx> d{3, 1, 2};
  auto dv = hermitian_eigenvalues(CMatrix::diagonal(d));
  CHECK(dv[0] == doctest::Approx(1.0));
  CHECK(dv[1] == doctest::Approx(2.0));
  CHECK(dv[2] == doctest::Approx(3.0));

  CHECK_THROWS(hermitian_eigs(CMatrix(2, 2, std::vector<cplx>{1, 1, 0, 1})));

  Rng rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t dim = 6 + 2 * (trial % 4);
    const CMatrix h = rng.hermitian(dim);
    const auto es = hermitian_eigs(h);
    CMatrix rec = CMatrix::zeros(dim, dim);
    for (std::size_t k = 0; k < dim; ++k) {
      std::vector<cplx> v(dim);
      for (std::size_t i = 0; i < dim; ++i) v[i] = es.vectors(i, k);
      rec = rec + CMatrix::outer(v, v) * cplx{es.values[k]};
    }
    CHECK(max_abs_diff(rec, h) <= 1e-9);
    CHECK(max_abs_diff(dagger(es.vectors) * es.vectors, CMatrix::identity(dim)) < 1e-10);
    const auto oracle = eigen_eigenvalues(h);
    CHECK(std::is_sorted(es.values.begin(), es.values.end()));
    for (std::size_t k = 0; k < dim; ++k) CHECK(std::abs(es.values[k] - oracle[k]) < 1e-10);
  }
}

TEST_CASE("trace_distance") {
  Rng rng(5);
  const auto rho = rng.state(3);
  CHECK(trace_distance(rho.matrix(), rho.matrix()) < 1e-14);
  const std::vector<cplx> k0{1, 0}, k1{0, 1};
  CHECK(trace_distance(CMatrix::outer(k0, k0), CMatrix::outer(k1, k1)) == doctest::Approx(1.0));

  // Eigen oracle: half the sum of absolute eigenvalues of the difference.
  const auto sigma = rng.state(3);
  Eigen::SelfAdjointEigenSolver<EMatrix> es(to_eigen(rho.matrix()) - to_eigen(sigma.matrix()));
  CHECK(trace_distance(rho.matrix(), sigma.matrix()) ==
        doctest::Approx(0.5 * es.eigenvalues().cwiseAbs().sum()).epsilon(1e-12));
}

TEST_CASE("trace_distance to the maximally mixed state at n=3 (phi0=pi/2, phi1=pi/3)") {
  // Subdominant channel eigenvalue modulus is about 0.976, so 1e-6 is reached near t=600.
  const ChannelParams p(3, 0.5, pi / 2, pi / 3);
  const WalkModel model(p);
  DensityMatrix rho = DensityMatrix::product(3, 3, CMatrix::outer(std::vector<cplx>{1, 0}, std::vector<cplx>{1, 0}));
  for (int t = 0; t < 1000; ++t) rho = model.step(rho);
  CHECK(trace_distance(rho.matrix(), DensityMatrix::maximally_mixed(3).matrix()) < 1e-6);
}
