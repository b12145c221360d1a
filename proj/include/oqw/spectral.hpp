#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "oqw/qops.hpp"
#include "oqw/walk.hpp"

namespace oqw {

/// Analytic eigenpair data of the walk unitary at momentum index k.
struct MomentumMode {
  int k = 0;
  cplx lambda_plus;   ///< e^{+i phase}
  cplx lambda_minus;  ///< e^{-i phase}
  double phase = 0.0;
  cplx chi;           ///< √2 e^{i(phase + 2πk/n)}
  double normalizer = 0.0;
  cplx alpha_plus, beta_plus;    ///< coin spinor of |k+>
  cplx alpha_minus, beta_minus;  ///< coin spinor of |k->
};

struct Spectrum {
  int n = 0;
  std::vector<MomentumMode> modes;  ///< k = 0..n-1
};

struct WalkEigenvalues {
  cplx plus;
  cplx minus;
  double phase = 0.0;
};

WalkEigenvalues walk_eigenvalues(int n, int k);
MomentumMode momentum_mode(int n, int k);
Spectrum walk_spectrum(int n);
/// (|k+>, |k->)
std::pair<PureState, PureState> walk_eigenstates(int n, int k);

enum class Sign { plus, minus };

/// Joint eigenvector of U and V U orthogonal to |n> ⊗ |marked coin>.
struct DarkState {
  int k = 1;
  Sign sign = Sign::plus;
  PureState vector;
  cplx eigenvalue;
  cplx a, b;  ///< |φ> ∝ a|k s> + b|-k s>
};

/// The n-1 dark states for k = 1..(n-1)/2 and both signs. `marked_coin` is the
/// coin level whose phase is non-zero. Global phase: <1, marked_coin|φ> real-positive.
std::vector<DarkState> dark_states(int n, int marked_coin = 0);

enum class Regime { mixed_max, mixed_partial, oscillatory };
std::string to_string(Regime r);

/// Throws InvalidParams for eta in {0,1} or phi0 = phi1 = 0.
Regime classify_regime(const ChannelParams& p);

struct AttractorOperator {
  CMatrix op;  ///< Hilbert-Schmidt normalized
  cplx eigenvalue;
  std::string label;
};

struct AttractorBasis {
  Regime regime;
  ChannelParams params;
  std::vector<AttractorOperator> operators;
};

/// 1_x ⊗ 1_c (norm² 2n)
CMatrix identity_operator(int n);
/// Σ_x |x><n-x| ⊗ σ_y (norm² 2n)
CMatrix reflection_sigma_y_operator(int n);

AttractorBasis attractor_basis(const ChannelParams& p);

/// ρ∞(t) = Σ Tr(X† ρ0) λ^t X
DensityMatrix asymptotic_state(const DensityMatrix& rho0, const AttractorBasis& basis, long t);

struct EqualPhaseStationary {
  DensityMatrix state;
  double xi = 0.0;
  // Product operators (1/2n)(1 ± R) ⊗ (1 ± σ_y), R = Σ|x><n-x|, with
  // state = (1-ξ)(1/2n)1 + (ξ/2)(rho_plus + rho_minus). Their traces are (n±1)/n.
  CMatrix rho_plus;
  CMatrix rho_minus;
};

/// Stationary state (1/2n)(1 + ξ X2) with ξ = Tr(X2 ρ0). Throws InvalidParams if |ξ| > 1.
EqualPhaseStationary stationary_equal_phases(const DensityMatrix& rho0, int n);

struct EigenoperatorResidual {
  double walk = 0.0;    ///< ‖U X U† - λX‖∞
  double kicked = 0.0;  ///< ‖(VU) X (VU)† - λX‖∞
  double phase = 0.0;   ///< ‖V X V† - X‖∞
  double max() const { return std::max({walk, kicked, phase}); }
};

EigenoperatorResidual verify_eigenoperator(const CMatrix& x, cplx lambda, const ChannelParams& p);

}  // namespace oqw
