#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oqw/qops.hpp"
#include "oqw/spectral.hpp"
#include "oqw/walk.hpp"

namespace oqw {

/// Pauli expectations of the reduced coin state; σ_z|0> = +|0>.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double norm() const;
};

std::vector<double> position_distribution(const DensityMatrix& rho);
BlochVector bloch_vector(const DensityMatrix& rho);
double coin_purity(const DensityMatrix& rho);
/// Tr{(a - b)²}
double delta_metric(const DensityMatrix& a, const DensityMatrix& b);
/// Smallest eigenvalue of the coin-partially-transposed state; negative ⇒ entangled.
double min_pt_eigenvalue(const DensityMatrix& rho);
bool is_ppt(double min_pt_eig);

struct TrajectoryRecord {
  long t = 0;
  std::vector<double> position_dist;
  BlochVector bloch;
  double coin_purity = 0.0;
  double purity = 0.0;
  std::optional<double> delta;  ///< undefined at the final step
  double min_pt_eig = 0.0;
  double dist_to_maxmix = 0.0;  ///< trace distance to 1/(2n)
};

/// One record per state; records are computed independently.
std::vector<TrajectoryRecord> trajectory_records(std::span<const DensityMatrix> states, long t0 = 0);

/// Initial coin state parametrization: polar angle, azimuth and purity gamma.
struct CoinFit {
  double theta = 0.0;
  double alpha = 0.0;
  double gamma = 1.0;
};

CMatrix coin_fit_initial_state(const CoinFit& fit);
/// Stationary coin state predicted for an equal-phase walk started at x = n.
CMatrix coin_stationary_fit(const CoinFit& fit, int n);

enum class AsymptoticVerdict { fixed_maxmix, fixed_partial, oscillatory, inconclusive };
std::string to_string(AsymptoticVerdict v);

struct ClassifyThresholds {
  double tail_fraction = 0.25;
  double fixed_delta = 1e-9;
  double oscillating_delta = 1e-6;
};

/// Needs at least 100 records; throws std::invalid_argument otherwise.
AsymptoticVerdict classify_asymptotics(std::span<const TrajectoryRecord> traj, double tol,
                                       const ClassifyThresholds& th = {});

/// Closed-form oscillatory asymptotics of the 3-cycle (phi0 != 0, phi1 = 0),
/// with the dark states in their fixed gauge.
struct ThreeCycleAsymptotics {
  double p_plus = 0.0;
  double p_minus = 0.0;
  cplx kappa;
  cplx Lambda;  ///< λ_{1+} λ_{1-}* = λ_{1+}²
  cplx omega;   ///< 1 + 3i√7
  CMatrix pi_plus, pi_minus, x_plus, ibar;

  DensityMatrix state(long t) const;
  BlochVector bloch(long t) const;
};

ThreeCycleAsymptotics three_cycle_asymptotics(const DensityMatrix& rho0, const ChannelParams& p);

/// Printed Bloch formulas for an initial coin α|0> + β|1> at x = 3.
double three_cycle_closed_form_bloch_x(long t, double beta_sq);
double three_cycle_closed_form_bloch_z(long t, double beta_sq);

/// Algebraic conic a x² + b xz + c z² + d x + e z + f = 0 fitted by least squares.
struct ConicFit {
  std::array<double, 6> coeffs{};
  double max_residual = 0.0;
  double discriminant = 0.0;  ///< b² - 4ac; negative for an ellipse
};

ConicFit fit_conic(std::span<const std::array<double, 2>> points);

}  // namespace oqw
