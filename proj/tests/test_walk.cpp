#include <Eigen/Eigenvalues>
#include <algorithm>

#include "oqw/analysis.hpp"
#include "oqw/spectral.hpp"
#include "support.hpp"

using namespace oqw;
using namespace oqw::test;

namespace {

std::vector<cplx> basis_ket(int n, int x, int c) {
  std::vector<cplx> v(2 * n);
  v[BasisIndex{x, c}.flat()] = 1.0;
  return v;
}

double max_diff(std::span<const cplx> a, std::span<const cplx> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

CMatrix coin_ket(cplx c0, cplx c1) {
  const std::vector<cplx> v{c0, c1};
  return CMatrix::outer(v, v);
}

}  // namespace

TEST_CASE("ChannelParams validation") {
  CHECK_NOTHROW(ChannelParams(3, 0.5, pi, 0.0));
  CHECK_THROWS_AS(ChannelParams(4, 0.5, pi, 0.0), InvalidParams);
  CHECK_THROWS_AS(ChannelParams(1, 0.5, pi, 0.0), InvalidParams);
  CHECK_THROWS_AS(ChannelParams(3, -0.1, pi, 0.0), InvalidParams);
  CHECK_THROWS_AS(ChannelParams(3, 1.1, pi, 0.0), InvalidParams);
  CHECK(ChannelParams(3, 0.5, -pi / 2, 5 * pi).phi0() == doctest::Approx(3 * pi / 2));
  CHECK(ChannelParams(3, 0.5, -pi / 2, 5 * pi).phi1() == doctest::Approx(pi));
  try {
    ChannelParams(6, 0.5, pi, 0.0);
    FAIL("even n accepted");
  } catch (const InvalidParams& e) {
    CHECK(std::string(e.what()).find("even") != std::string::npos);
  }
}

TEST_CASE("DensityMatrix invariants") {
  CHECK_THROWS_AS(DensityMatrix(CMatrix::identity(6)), InvariantViolation);
  CHECK_THROWS_AS(DensityMatrix(CMatrix(2, 2, std::vector<cplx>{0.5, 0.1, 0.0, 0.5})), InvariantViolation);
  CHECK_THROWS_AS(DensityMatrix(CMatrix::diagonal(std::vector<cplx>{1.5, -0.5})), InvariantViolation);
  CHECK_NOTHROW(DensityMatrix::without_positivity_check(CMatrix::diagonal(std::vector<cplx>{1.5, -0.5})));
  CHECK_THROWS(PureState({1.0, 1.0}));
  CHECK(DensityMatrix::maximally_mixed(5).purity() == doctest::Approx(0.1));
}

TEST_CASE("coin") {
  const int n = 3;
  const double h = 1.0 / std::sqrt(2.0);
  const CMatrix c = build_coin(n);
  for (int x = 1; x <= n; ++x) {
    const auto k0 = basis_ket(n, x, 0);
    const auto k1 = basis_ket(n, x, 1);
    auto out0 = oqw::apply(c, k0);
    auto out1 = oqw::apply(c, k1);
    std::vector<cplx> e0(2 * n), e1(2 * n);
    e0[BasisIndex{x, 0}.flat()] = h;
    e0[BasisIndex{x, 1}.flat()] = -h;
    e1[BasisIndex{x, 0}.flat()] = h;
    e1[BasisIndex{x, 1}.flat()] = h;
    CHECK(max_diff(out0, e0) < 1e-15);
    CHECK(max_diff(out1, e1) < 1e-15);
  }
  CHECK(max_abs_diff(c * dagger(c), CMatrix::identity(2 * n)) < 1e-15);
}

TEST_CASE("shift") {
  for (int n : {3, 5, 7}) {
    const CMatrix s = build_shift(n);
    auto moved = [&](int x, int c) {
      const auto k = basis_ket(n, x, c);
      return oqw::apply(s, k);
    };
    CHECK(max_diff(moved(n, 0), basis_ket(n, 1, 0)) == 0.0);
    CHECK(max_diff(moved(1, 1), basis_ket(n, n, 1)) == 0.0);
    for (int x = 1; x < n; ++x) CHECK(max_diff(moved(x, 0), basis_ket(n, x + 1, 0)) == 0.0);
    CHECK(max_abs_diff(s * dagger(s), CMatrix::identity(2 * n)) == 0.0);
  }
}

TEST_CASE("walk unitary") {
  const int n = 5;
  const CMatrix u = build_walk_unitary(n);
  Rng rng(7);
  for (int x = 1; x <= n; ++x) {
    const auto spinor = rng.ket(2);
    std::vector<cplx> in(2 * n);
    in[BasisIndex{x, 0}.flat()] = spinor[0];
    in[BasisIndex{x, 1}.flat()] = spinor[1];
    // Coin acts first: alpha|0> + beta|1> -> ((alpha+beta)|0> + (beta-alpha)|1>)/sqrt2.
    const double h = 1.0 / std::sqrt(2.0);
    const cplx a = h * (spinor[0] + spinor[1]);
    const cplx b = h * (spinor[1] - spinor[0]);
    std::vector<cplx> expected(2 * n);
    expected[BasisIndex{x % n + 1, 0}.flat()] = a;
    expected[BasisIndex{(x + n - 2) % n + 1, 1}.flat()] = b;
    CHECK(max_diff(oqw::apply(u, in), expected) < 1e-15);
  }

  // n=3 spectrum: unit modulus and equal to the analytic set.
  Eigen::ComplexEigenSolver<EMatrix> es(to_eigen(build_walk_unitary(3)));
  std::vector<cplx> numeric(es.eigenvalues().data(), es.eigenvalues().data() + 6);
  std::vector<cplx> analytic;
  for (int k = 0; k < 3; ++k) {
    const auto ev = walk_eigenvalues(3, k);
    analytic.push_back(ev.plus);
    analytic.push_back(ev.minus);
  }
  for (const cplx& z : numeric) {
    CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
    double best = 1e9;
    for (const cplx& w : analytic) best = std::min(best, std::abs(z - w));
    CHECK(best < 1e-10);
  }
  // Multiplicity: k=1 and k=2 share eigenvalues.
  CHECK(std::abs(walk_eigenvalues(3, 1).plus - walk_eigenvalues(3, 2).plus) < 1e-15);
}

TEST_CASE("phase unitary") {
  CHECK(max_abs_diff(build_phase_unitary(ChannelParams(3, 0.5, 0.0, 0.0)), CMatrix::identity(6)) == 0.0);
  const std::vector<cplx> d{1, 1, 1, 1, -1, 1};
  CHECK(max_abs_diff(build_phase_unitary(ChannelParams(3, 0.5, pi, 0.0)), CMatrix::diagonal(d)) < 1e-15);
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    const CMatrix v = build_phase_unitary(ChannelParams(rng.odd_n(), 0.5, rng.angle(), rng.angle()));
    CHECK(max_abs_diff(dagger(v) * v, CMatrix::identity(v.rows())) < 1e-15);
  }
}

TEST_CASE("Kraus pair") {
  const auto [a0, a1] = kraus_pair(ChannelParams(3, 0.0, pi, 0.0));
  CHECK(max_abs_diff(a0, CMatrix::identity(6)) == 0.0);
  CHECK(max_abs(a1) == 0.0);

  const ChannelParams one(3, 1.0, pi / 3, pi / 5);
  const auto [b0, b1] = kraus_pair(one);
  CHECK(max_abs(b0) == 0.0);
  CHECK(max_abs_diff(b1, build_phase_unitary(one)) < 1e-15);

  const ChannelParams half(5, 0.5, 1.0, 2.0);
  const auto [c0, c1] = kraus_pair(half);
  CHECK(max_abs_diff(c0, CMatrix::identity(10) * cplx{1.0 / std::sqrt(2.0)}) < 1e-15);
  CHECK(max_abs_diff(c1, build_phase_unitary(half) * cplx{1.0 / std::sqrt(2.0)}) < 1e-15);
  CHECK(max_abs_diff(dagger(c0) * c0 + dagger(c1) * c1, CMatrix::identity(10)) < 1e-15);
}

TEST_CASE("channel_step reductions") {
  Rng rng(9);
  for (int i = 0; i < 10; ++i) {
    const int n = rng.odd_n();
    const auto rho = rng.state(n);
    const CMatrix u = build_walk_unitary(n);
    const CMatrix unitary = u * rho.matrix() * dagger(u);
    CHECK(max_abs_diff(channel_step(rho, ChannelParams(n, 0.0, rng.angle(), rng.angle())).matrix(), unitary) <
          1e-13);
    CHECK(max_abs_diff(channel_step(rho, ChannelParams(n, rng.uniform(), 0.0, 0.0)).matrix(), unitary) < 1e-13);
  }
}

TEST_CASE("channel_step: fig1 settings relax to the maximally mixed state") {
  // Subdominant channel eigenvalue modulus 0.98647: distance is 2.5e-3 at t=200, 3e-7 at t=1000.
  const ChannelParams p(5, 0.5, pi / 2, pi / 3);
  const WalkModel model(p);
  DensityMatrix rho = DensityMatrix::product(5, 3, coin_ket(1, 0));
  std::vector<double> dist;
  for (int t = 1; t <= 1000; ++t) {
    rho = model.step(rho);
    if (t == 200 || t == 500 || t == 1000)
      dist.push_back(trace_distance(rho.matrix(), DensityMatrix::maximally_mixed(5).matrix()));
  }
  CHECK(dist[0] < 5e-3);
  CHECK(dist[1] < 1e-4);
  CHECK(dist[2] < 1e-6);
}

TEST_CASE("dephasing comparison channel") {
  const int n = 3;
  const auto rho0 = DensityMatrix::product(n, 2, coin_ket(1.0 / std::sqrt(2.0), cplx{0, 1.0 / std::sqrt(2.0)}));
  const auto rho1 = dephasing_step(rho0, 0.5, n);
  const CMatrix& m = rho1.matrix();
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y) {
      CHECK(std::abs(m(BasisIndex{x, 0}.flat(), BasisIndex{y, 1}.flat())) < 1e-15);
      CHECK(std::abs(m(BasisIndex{x, 1}.flat(), BasisIndex{y, 0}.flat())) < 1e-15);
    }

  DensityMatrix rho = rho0;
  for (int t = 0; t < 400; ++t) rho = dephasing_step(rho, 0.5, n);
  CHECK(trace_distance(rho.matrix(), DensityMatrix::maximally_mixed(n).matrix()) < 1e-8);

  const CMatrix u = build_walk_unitary(n);
  CHECK(max_abs_diff(dephasing_step(rho0, 0.0, n).matrix(), u * rho0.matrix() * dagger(u)) < 1e-15);
}

TEST_CASE("evolve") {
  Rng rng(10);
  const auto rho0 = rng.pure_state(3);
  const auto one = evolve(rho0, ChannelParams(3, 0.5, pi, 0.0), 0);
  REQUIRE(one.size() == 1);
  CHECK(max_abs_diff(one[0].matrix(), rho0.matrix()) == 0.0);

  const auto unitary = evolve(rho0, ChannelParams(3, 0.0, pi, 0.0), 50);
  for (const auto& r : unitary) CHECK(std::abs(r.purity() - rho0.purity()) <= 1e-10);

  // Oscillatory settings: Delta keeps a persistent nonzero value.
  const auto osc = evolve(DensityMatrix::product(3, 3, coin_ket(0, 1)), ChannelParams(3, 0.5, pi, 0.0), 600);
  double tail_min = 1e9;
  for (int t = 500; t < 600; ++t) tail_min = std::min(tail_min, delta_metric(osc[t], osc[t + 1]));
  CHECK(tail_min > 1e-2);
}

TEST_CASE("Kraus and random-unitary forms agree") {
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const ChannelParams p(rng.odd_n(), rng.uniform(), rng.angle(), rng.angle());
    const WalkModel model(p);
    const auto rho = i % 2 ? rng.state(p.n()) : rng.pure_state(p.n());
    CHECK(max_abs_diff(model.step(rho).matrix(), model.step_mixture(rho).matrix()) <= 1e-12);
  }
}

TEST_CASE("trace and positivity over long runs") {
  Rng rng(13);
  for (int trial = 0; trial < 3; ++trial) {
    const ChannelParams p(3 + 2 * trial, rng.uniform(0.1, 0.9), rng.angle(), rng.angle());
    const WalkModel model(p);
    DensityMatrix rho = rng.pure_state(p.n());
    double worst_trace = 0.0, worst_eig = 0.0;
    for (int t = 1; t <= 10000; ++t) {
      rho = model.step(rho);
      worst_trace = std::max(worst_trace, std::abs(trace(rho.matrix()) - 1.0));
      if (t % 500 == 0) worst_eig = std::min(worst_eig, rho.min_eigenvalue());
    }
    CHECK(worst_trace < 1e-10);
    CHECK(worst_eig > -1e-10);
  }
}

TEST_CASE("purity is non-increasing for eta in (0,1)") {
  Rng rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const ChannelParams p(rng.odd_n(3, 7), rng.uniform(0.05, 0.95), rng.angle(), rng.angle());
    const WalkModel model(p);
    DensityMatrix rho = rng.pure_state(p.n());
    double prev = rho.purity();
    for (int t = 0; t < 50; ++t) {
      rho = model.step(rho);
      CHECK(rho.purity() <= prev + 1e-12);
      prev = rho.purity();
    }
  }
}

TEST_CASE("pure state outside the dark subspace loses purity in one step") {
  const ChannelParams p(3, 0.5, pi, 0.0);
  const WalkModel model(p);
  // |2,0> reaches the marked site in one step; |3,1> first moves away from it.
  CHECK(model.step(DensityMatrix::product(3, 2, coin_ket(1, 0))).purity() < 1.0 - 1e-6);
  const auto first = model.step(DensityMatrix::product(3, 3, coin_ket(0, 1)));
  CHECK(first.purity() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(model.step(first).purity() < 1.0 - 1e-6);
  for (const auto& d : dark_states(3)) {
    CHECK(model.step(DensityMatrix::pure(d.vector)).purity() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("coin-flip symmetry") {
  Rng rng(15);
  for (int n : {3, 5}) {
    const CMatrix w = build_coin_flip_reflection(n);
    CHECK(max_abs_diff(w * build_walk_unitary(n), build_walk_unitary(n) * w) < 1e-15);
    for (int trial = 0; trial < 5; ++trial) {
      const double a = rng.angle(), b = rng.angle(), eta = rng.uniform();
      const WalkModel forward(ChannelParams(n, eta, a, b));
      const WalkModel swapped(ChannelParams(n, eta, b, a));
      DensityMatrix rho = rng.pure_state(n);
      DensityMatrix mapped = DensityMatrix(w * rho.matrix() * dagger(w));
      for (int t = 0; t < 20; ++t) {
        rho = swapped.step(rho);
        mapped = forward.step(mapped);
      }
      CHECK(max_abs_diff(mapped.matrix(), w * rho.matrix() * dagger(w)) < 1e-12);
    }
  }
}

TEST_CASE("relabel_positions is a cyclic translation") {
  const auto rho = DensityMatrix::product(5, 2, coin_ket(1, 0));
  const auto moved = relabel_positions(rho, 2);
  const auto dist = position_distribution(moved);
  CHECK(dist[3] == doctest::Approx(1.0));
  CHECK(max_abs_diff(relabel_positions(moved, -2).matrix(), rho.matrix()) < 1e-15);
}
