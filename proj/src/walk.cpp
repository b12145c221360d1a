#include "oqw/walk.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace oqw {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_hermitian_unit_trace(const CMatrix& body) {
  if (!body.square() || body.rows() % 2 != 0 || body.rows() == 0) {
    throw InvariantViolation("density matrix must be square with even dimension, got " +
                             std::to_string(body.rows()) + "x" + std::to_string(body.cols()));
  }
  const double defect = hermiticity_defect(body);
  if (defect > Tolerances::hermiticity) {
    throw InvariantViolation("density matrix is not Hermitian (max |rho - rho^dagger| = " + std::to_string(defect) +
                             ")");
  }
  const cplx tr = trace(body);
  if (std::abs(tr - 1.0) > Tolerances::trace) {
    throw InvariantViolation("density matrix trace is " + std::to_string(tr.real()) + "+" +
                             std::to_string(tr.imag()) + "i, expected 1");
  }
}

}  // namespace

void require_odd_cycle(int n) {
  if (n < 3) throw InvalidParams("cycle length n must be >= 3, got " + std::to_string(n));
  if (n % 2 == 0) {
    throw InvalidParams("cycle length n=" + std::to_string(n) +
                        " is even: amplitudes at even and odd positions never interfere, so the walk "
                        "splits into two independent half-lattice walks; only odd n is supported");
  }
}

double reduce_phase(double phi) {
  if (!std::isfinite(phi)) throw InvalidParams("phase must be finite");
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r -= kTwoPi;
  return r;
}

ChannelParams::ChannelParams(int n, double eta, double phi0, double phi1)
    : n_(n), eta_(eta), phi0_(reduce_phase(phi0)), phi1_(reduce_phase(phi1)) {
  require_odd_cycle(n);
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidParams("eta must lie in [0,1], got " + std::to_string(eta));
}

PureState::PureState(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
  const double nrm = norm(amps_);
  if (std::abs(nrm - 1.0) > 1e-12) {
    throw InvariantViolation("pure state norm is " + std::to_string(nrm) + ", expected 1");
  }
}

PureState PureState::localized(int n, int x, cplx c0, cplx c1) {
  if (x < 1 || x > n) throw InvalidParams("position must lie in 1.." + std::to_string(n));
  const double nc = std::sqrt(std::norm(c0) + std::norm(c1));
  if (nc == 0.0) throw InvalidParams("coin amplitudes are both zero");
  std::vector<cplx> amps(static_cast<std::size_t>(2 * n));
  amps[BasisIndex{x, 0}.flat()] = c0 / nc;
  amps[BasisIndex{x, 1}.flat()] = c1 / nc;
  return PureState(std::move(amps));
}

DensityMatrix::DensityMatrix(CMatrix body) : body_(std::move(body)) {
  check_hermitian_unit_trace(body_);
  const double lo = min_eigenvalue();
  if (lo < -Tolerances::positivity) {
    throw InvariantViolation("density matrix is not positive semidefinite (min eigenvalue " + std::to_string(lo) +
                             ")");
  }
}

DensityMatrix DensityMatrix::without_positivity_check(CMatrix body) {
  check_hermitian_unit_trace(body);
  return DensityMatrix(std::move(body), Trusted{});
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  return DensityMatrix(CMatrix::outer(psi.amplitudes(), psi.amplitudes()), Trusted{});
}

DensityMatrix DensityMatrix::maximally_mixed(int n) {
  const auto dim = static_cast<std::size_t>(2 * n);
  return DensityMatrix((1.0 / static_cast<double>(dim)) * CMatrix::identity(dim), Trusted{});
}

DensityMatrix DensityMatrix::product(int n, int x, const CMatrix& coin) {
  if (x < 1 || x > n) throw InvalidParams("position must lie in 1.." + std::to_string(n));
  if (coin.rows() != 2 || coin.cols() != 2) throw DimensionError("coin state must be 2x2");
  const auto un = static_cast<std::size_t>(n);
  std::vector<cplx> proj(un * un);
  proj[(x - 1) * un + (x - 1)] = 1.0;
  return DensityMatrix(kron(CMatrix(un, un, std::move(proj)), coin));
}

double DensityMatrix::purity() const { return hs_inner(body_, body_).real(); }

double DensityMatrix::min_eigenvalue() const { return hermitian_eigenvalues(body_).front(); }

CMatrix build_coin(int n) {
  if (n < 1) throw InvalidParams("n must be >= 1");
  const double h = 1.0 / std::sqrt(2.0);
  // C|0> = (|0> - |1>)/√2, C|1> = (|0> + |1>)/√2
  const CMatrix c(2, 2, {h, h, -h, h});
  return kron(CMatrix::identity(static_cast<std::size_t>(n)), c);
}

CMatrix build_shift(int n) {
  if (n < 3) throw InvalidParams("shift needs n >= 3");
  const auto dim = static_cast<std::size_t>(2 * n);
  std::vector<cplx> d(dim * dim);
  for (int x = 1; x <= n; ++x) {
    const int right = x % n + 1;
    const int left = (x + n - 2) % n + 1;
    d[BasisIndex{right, 0}.flat() * dim + BasisIndex{x, 0}.flat()] = 1.0;
    d[BasisIndex{left, 1}.flat() * dim + BasisIndex{x, 1}.flat()] = 1.0;
  }
  return CMatrix(dim, dim, std::move(d));
}

CMatrix build_walk_unitary(int n) {
  require_odd_cycle(n);
  return build_shift(n) * build_coin(n);
}

CMatrix build_phase_unitary(const ChannelParams& p) {
  std::vector<cplx> diag(p.dim(), 1.0);
  diag[BasisIndex{p.n(), 0}.flat()] = std::polar(1.0, p.phi0());
  diag[BasisIndex{p.n(), 1}.flat()] = std::polar(1.0, p.phi1());
  return CMatrix::diagonal(diag);
}

std::array<CMatrix, 2> kraus_pair(const ChannelParams& p) {
  return {std::sqrt(1.0 - p.eta()) * CMatrix::identity(p.dim()), std::sqrt(p.eta()) * build_phase_unitary(p)};
}

CMatrix build_translation(int n, int shift) {
  const auto dim = static_cast<std::size_t>(2 * n);
  std::vector<cplx> d(dim * dim);
  for (int x = 1; x <= n; ++x) {
    const int y = ((x - 1 + shift) % n + n) % n + 1;
    for (int c = 0; c < 2; ++c) d[BasisIndex{y, c}.flat() * dim + BasisIndex{x, c}.flat()] = 1.0;
  }
  return CMatrix(dim, dim, std::move(d));
}

CMatrix build_coin_flip_reflection(int n) {
  const auto dim = static_cast<std::size_t>(2 * n);
  std::vector<cplx> d(dim * dim);
  for (int x = 1; x <= n; ++x) {
    const int y = (n - x + n - 1) % n + 1;  // n - x with 0 ≡ n
    // σ_z σ_x: |0> -> -|1>, |1> -> |0>
    d[BasisIndex{y, 1}.flat() * dim + BasisIndex{x, 0}.flat()] = -1.0;
    d[BasisIndex{y, 0}.flat() * dim + BasisIndex{x, 1}.flat()] = 1.0;
  }
  return CMatrix(dim, dim, std::move(d));
}

WalkModel::WalkModel(const ChannelParams& p)
    : params_(p),
      u0_(build_walk_unitary(p.n())),
      u0_dag_(dagger(u0_)),
      v_(build_phase_unitary(p)),
      u1_(v_ * u0_),
      u1_dag_(dagger(u1_)) {
  auto [k0, k1] = kraus_pair(p);
  k0_ = std::move(k0);
  k1_ = std::move(k1);
  k0_dag_ = dagger(k0_);
  k1_dag_ = dagger(k1_);
}

DensityMatrix WalkModel::step(const DensityMatrix& rho) const {
  if (rho.dim() != params_.dim()) throw DimensionError("channel_step: state dimension does not match n");
  const CMatrix walked = u0_ * rho.matrix() * u0_dag_;
  return DensityMatrix(k0_ * walked * k0_dag_ + k1_ * walked * k1_dag_, DensityMatrix::Trusted{});
}

DensityMatrix WalkModel::step_mixture(const DensityMatrix& rho) const {
  if (rho.dim() != params_.dim()) throw DimensionError("channel_step: state dimension does not match n");
  const double eta = params_.eta();
  return DensityMatrix((1.0 - eta) * (u0_ * rho.matrix() * u0_dag_) + eta * (u1_ * rho.matrix() * u1_dag_),
                       DensityMatrix::Trusted{});
}

std::vector<DensityMatrix> WalkModel::evolve(const DensityMatrix& rho0, int steps) const {
  if (steps < 0) throw InvalidParams("steps must be >= 0");
  std::vector<DensityMatrix> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(rho0);
  for (int t = 0; t < steps; ++t) {
    DensityMatrix next = step(out.back());
    const cplx tr = trace(next.matrix());
    if (std::abs(tr - 1.0) > Tolerances::positivity || hermiticity_defect(next.matrix()) > Tolerances::hermiticity) {
      throw InvariantViolation("evolve: trace or Hermiticity drifted at step " + std::to_string(t + 1));
    }
    out.push_back(std::move(next));
  }
  return out;
}

DensityMatrix channel_step(const DensityMatrix& rho, const ChannelParams& p) { return WalkModel(p).step(rho); }

DensityMatrix dephasing_step(const DensityMatrix& rho, double eta, int n) {
  require_odd_cycle(n);
  if (!(eta >= 0.0 && eta <= 1.0)) throw InvalidParams("eta must lie in [0,1]");
  if (rho.dim() != static_cast<std::size_t>(2 * n)) throw DimensionError("dephasing_step: dimension mismatch");
  const CMatrix u = build_walk_unitary(n);
  const CMatrix walked = u * rho.matrix() * dagger(u);
  const CMatrix zz = kron(CMatrix::identity(static_cast<std::size_t>(n)), pauli::z());
  return DensityMatrix((1.0 - eta) * walked + eta * (zz * walked * zz), DensityMatrix::Trusted{});
}

std::vector<DensityMatrix> evolve(const DensityMatrix& rho0, const ChannelParams& p, int steps) {
  return WalkModel(p).evolve(rho0, steps);
}

DensityMatrix relabel_positions(const DensityMatrix& rho, int shift) {
  const CMatrix t = build_translation(rho.n(), shift);
  return DensityMatrix::without_positivity_check(t * rho.matrix() * dagger(t));
}

}  // namespace oqw
