#pragma once

#include <array>
#include <stdexcept>
#include <vector>

#include "oqw/qops.hpp"

namespace oqw {

/// Rejected model parameters (even or too-small cycles, probabilities outside [0,1]).
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A density matrix failed its Hermiticity, trace or positivity check.
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Model parameters: odd cycle length n >= 3, phase-kick probability eta and the
/// two coin phases applied at the marked site x = n. Phases are reduced mod 2π.
class ChannelParams {
 public:
  ChannelParams(int n, double eta, double phi0, double phi1);

  int n() const noexcept { return n_; }
  double eta() const noexcept { return eta_; }
  double phi0() const noexcept { return phi0_; }
  double phi1() const noexcept { return phi1_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(2 * n_); }

 private:
  int n_;
  double eta_;
  double phi0_;
  double phi1_;
};

/// Checks n is an odd cycle length >= 3; throws InvalidParams otherwise.
void require_odd_cycle(int n);
double reduce_phase(double phi);

/// Unit-norm state vector over position ⊗ coin.
class PureState {
 public:
  explicit PureState(std::vector<cplx> amplitudes);
  /// |x> ⊗ (c0|0> + c1|1>), normalized.
  static PureState localized(int n, int x, cplx c0, cplx c1);

  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::size_t size() const noexcept { return amps_.size(); }

 private:
  std::vector<cplx> amps_;
};

/// Hermitian, unit-trace, positive semidefinite 2n x 2n matrix.
class DensityMatrix {
 public:
  /// Validates every invariant; throws InvariantViolation.
  explicit DensityMatrix(CMatrix body);
  /// Skips the positivity check (Hermiticity and trace are still checked).
  static DensityMatrix without_positivity_check(CMatrix body);
  static DensityMatrix pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int n);
  /// |x><x| ⊗ coin for a 2x2 coin density matrix.
  static DensityMatrix product(int n, int x, const CMatrix& coin);

  const CMatrix& matrix() const noexcept { return body_; }
  std::size_t dim() const noexcept { return body_.rows(); }
  int n() const noexcept { return static_cast<int>(body_.rows() / 2); }
  double purity() const;
  double min_eigenvalue() const;

 private:
  struct Trusted {};
  DensityMatrix(CMatrix body, Trusted) : body_(std::move(body)) {}
  friend class WalkModel;
  friend DensityMatrix dephasing_step(const DensityMatrix&, double, int);

  CMatrix body_;
};

CMatrix build_coin(int n);
CMatrix build_shift(int n);
CMatrix build_walk_unitary(int n);
CMatrix build_phase_unitary(const ChannelParams& p);
std::array<CMatrix, 2> kraus_pair(const ChannelParams& p);
/// Cyclic relabeling |x> -> |x + shift> on position, identity on coin.
CMatrix build_translation(int n, int shift);
/// R ⊗ (σ_z σ_x) with R|x> = |n - x>; commutes with the walk unitary and
/// exchanges the roles of phi0 and phi1.
CMatrix build_coin_flip_reflection(int n);

/// Operators of one parameter set, built once and shared read-only.
class WalkModel {
 public:
  explicit WalkModel(const ChannelParams& p);

  const ChannelParams& params() const noexcept { return params_; }
  const CMatrix& walk_unitary() const noexcept { return u0_; }
  const CMatrix& phase_unitary() const noexcept { return v_; }
  /// V U
  const CMatrix& kicked_unitary() const noexcept { return u1_; }
  const CMatrix& k0() const noexcept { return k0_; }
  const CMatrix& k1() const noexcept { return k1_; }

  /// ρ' = K0 U ρ U† K0† + K1 U ρ U† K1†
  DensityMatrix step(const DensityMatrix& rho) const;
  /// ρ' = (1-η) U0 ρ U0† + η U1 ρ U1†
  DensityMatrix step_mixture(const DensityMatrix& rho) const;
  std::vector<DensityMatrix> evolve(const DensityMatrix& rho0, int steps) const;

 private:
  ChannelParams params_;
  CMatrix u0_, u0_dag_, v_, u1_, u1_dag_, k0_, k1_, k0_dag_, k1_dag_;
};

DensityMatrix channel_step(const DensityMatrix& rho, const ChannelParams& p);
/// One walk step followed by the position-independent σ_z dephasing channel.
DensityMatrix dephasing_step(const DensityMatrix& rho, double eta, int n);
std::vector<DensityMatrix> evolve(const DensityMatrix& rho0, const ChannelParams& p, int steps);

/// Re-labels the marked site: conjugates ρ by the cyclic translation.
DensityMatrix relabel_positions(const DensityMatrix& rho, int shift);

}  // namespace oqw
