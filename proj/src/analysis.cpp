#include "oqw/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace oqw {

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

std::vector<double> position_distribution(const DensityMatrix& rho) {
  const CMatrix reduced = partial_trace_coin(rho.matrix(), rho.n());
  std::vector<double> dist(reduced.rows());
  for (std::size_t x = 0; x < reduced.rows(); ++x) dist[x] = reduced(x, x).real();
  return dist;
}

BlochVector bloch_vector(const DensityMatrix& rho) {
  const CMatrix coin = partial_trace_position(rho.matrix(), rho.n());
  return {trace(coin * pauli::x()).real(), trace(coin * pauli::y()).real(), trace(coin * pauli::z()).real()};
}

double coin_purity(const DensityMatrix& rho) {
  const CMatrix coin = partial_trace_position(rho.matrix(), rho.n());
  return hs_inner(coin, coin).real();
}

double delta_metric(const DensityMatrix& a, const DensityMatrix& b) {
  const CMatrix d = b.matrix() - a.matrix();
  return hs_inner(d, d).real();
}

double min_pt_eigenvalue(const DensityMatrix& rho) {
  return hermitian_eigenvalues(partial_transpose_coin(rho.matrix(), rho.n())).front();
}

bool is_ppt(double min_pt_eig) { return min_pt_eig >= Tolerances::ppt_threshold; }

std::vector<TrajectoryRecord> trajectory_records(std::span<const DensityMatrix> states, long t0) {
  std::vector<TrajectoryRecord> out;
  out.reserve(states.size());
  if (states.empty()) return out;
  const auto maxmix = DensityMatrix::maximally_mixed(states.front().n());
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto& rho = states[i];
    TrajectoryRecord r;
    r.t = t0 + static_cast<long>(i);
    r.position_dist = position_distribution(rho);
    r.bloch = bloch_vector(rho);
    r.coin_purity = coin_purity(rho);
    r.purity = rho.purity();
    if (i + 1 < states.size()) r.delta = delta_metric(rho, states[i + 1]);
    r.min_pt_eig = min_pt_eigenvalue(rho);
    r.dist_to_maxmix = trace_distance(rho.matrix(), maxmix.matrix());
    out.push_back(std::move(r));
  }
  return out;
}

CMatrix coin_fit_initial_state(const CoinFit& fit) {
  const cplx off = fit.gamma * std::sin(fit.theta) / 2.0 * std::polar(1.0, fit.alpha);
  return CMatrix(2, 2, {(1.0 + std::cos(fit.theta)) / 2.0, off, std::conj(off), (1.0 - std::cos(fit.theta)) / 2.0});
}

CMatrix coin_stationary_fit(const CoinFit& fit, int n) {
  require_odd_cycle(n);
  if (fit.gamma < 0.0 || fit.gamma > 1.0) throw InvalidParams("coin fit purity gamma must lie in [0,1]");
  const cplx off = cplx{0.0, 1.0} * fit.gamma * std::sin(fit.theta) / (2.0 * n) * std::sin(fit.alpha);
  return CMatrix(2, 2, {0.5, off, std::conj(off), 0.5});
}

std::string to_string(AsymptoticVerdict v) {
  switch (v) {
    case AsymptoticVerdict::fixed_maxmix:
      return "FIXED_MAXMIX";
    case AsymptoticVerdict::fixed_partial:
      return "FIXED_PARTIAL";
    case AsymptoticVerdict::oscillatory:
      return "OSCILLATORY";
    case AsymptoticVerdict::inconclusive:
      return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

AsymptoticVerdict classify_asymptotics(std::span<const TrajectoryRecord> traj, double tol,
                                       const ClassifyThresholds& th) {
  if (traj.size() < 100) {
    throw std::invalid_argument("classify_asymptotics: need at least 100 records, got " + std::to_string(traj.size()));
  }
  const auto tail_len = std::max<std::size_t>(1, static_cast<std::size_t>(th.tail_fraction * traj.size()));
  double lo = INFINITY;
  double hi = 0.0;
  for (std::size_t i = traj.size() - tail_len; i < traj.size(); ++i) {
    if (!traj[i].delta) continue;
    lo = std::min(lo, *traj[i].delta);
    hi = std::max(hi, *traj[i].delta);
  }
  if (hi < th.fixed_delta) {
    return traj.back().dist_to_maxmix < tol ? AsymptoticVerdict::fixed_maxmix : AsymptoticVerdict::fixed_partial;
  }
  if (lo > th.oscillating_delta) return AsymptoticVerdict::oscillatory;
  return AsymptoticVerdict::inconclusive;
}

DensityMatrix ThreeCycleAsymptotics::state(long t) const {
  const cplx rot = std::polar(1.0, static_cast<double>(t) * std::arg(Lambda));
  // Projection onto X+ carries Tr(X+† ρ0) = κ*.
  const CMatrix osc = (std::conj(kappa) * rot) * x_plus + (kappa * std::conj(rot)) * dagger(x_plus);
  const CMatrix body =
      cplx{(1.0 - p_plus - p_minus) / 4.0} * ibar + cplx{p_plus} * pi_plus + cplx{p_minus} * pi_minus + osc;
  return DensityMatrix(body);
}

BlochVector ThreeCycleAsymptotics::bloch(long t) const { return bloch_vector(state(t)); }

ThreeCycleAsymptotics three_cycle_asymptotics(const DensityMatrix& rho0, const ChannelParams& p) {
  if (p.n() != 3 || rho0.n() != 3) throw InvalidParams("three_cycle_asymptotics needs n = 3");
  if (classify_regime(p) != Regime::oscillatory || p.phi1() != 0.0) {
    throw InvalidParams("three_cycle_asymptotics needs the oscillatory regime with phi1 = 0 and phi0 != 0");
  }
  const auto dark = dark_states(3, 0);
  const auto& plus = dark[0].vector.amplitudes();
  const auto& minus = dark[1].vector.amplitudes();

  ThreeCycleAsymptotics a;
  a.pi_plus = CMatrix::outer(plus, plus);
  a.pi_minus = CMatrix::outer(minus, minus);
  a.x_plus = CMatrix::outer(plus, minus);
  a.ibar = identity_operator(3) - a.pi_plus - a.pi_minus;
  a.p_plus = trace(a.pi_plus * rho0.matrix()).real();
  a.p_minus = trace(a.pi_minus * rho0.matrix()).real();
  a.kappa = trace(a.x_plus * rho0.matrix());
  a.Lambda = dark[0].eigenvalue * std::conj(dark[1].eigenvalue);
  a.omega = cplx{1.0, 3.0 * std::sqrt(7.0)};
  return a;
}

namespace {
cplx lambda_power(long t) {
  const cplx lam = walk_eigenvalues(3, 1).plus;
  return std::polar(1.0, static_cast<double>(t) * 2.0 * std::arg(lam));
}
}  // namespace

double three_cycle_closed_form_bloch_x(long t, double beta_sq) {
  const cplx omega{1.0, 3.0 * std::sqrt(7.0)};
  return (21.0 - 36.0 * beta_sq + 4.0 * beta_sq * (omega * lambda_power(t)).real()) / 98.0;
}

double three_cycle_closed_form_bloch_z(long t, double beta_sq) {
  return (21.0 - 36.0 * beta_sq + 32.0 * beta_sq * lambda_power(t + 1).real()) / 98.0;
}

ConicFit fit_conic(std::span<const std::array<double, 2>> points) {
  if (points.size() < 6) throw std::invalid_argument("fit_conic: need at least 6 points");
  // Scatter matrix of the design rows (x², xz, z², x, z, 1).
  std::vector<cplx> scatter(36);
  auto row = [](const std::array<double, 2>& pt) {
    const double x = pt[0];
    const double z = pt[1];
    return std::array<double, 6>{x * x, x * z, z * z, x, z, 1.0};
  };
  for (const auto& pt : points) {
    const auto r = row(pt);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) scatter[i * 6 + j] += r[i] * r[j];
  }
  const auto eig = hermitian_eigs(CMatrix(6, 6, std::move(scatter)));
  ConicFit fit;
  // The scatter matrix is real, so the eigenvector is real up to a global phase.
  int pivot = 0;
  for (int i = 1; i < 6; ++i)
    if (std::abs(eig.vectors(i, 0)) > std::abs(eig.vectors(pivot, 0))) pivot = i;
  const cplx gauge = std::conj(eig.vectors(pivot, 0)) / std::abs(eig.vectors(pivot, 0));
  for (int i = 0; i < 6; ++i) fit.coeffs[i] = (gauge * eig.vectors(i, 0)).real();
  for (const auto& pt : points) {
    const auto r = row(pt);
    double s = 0.0;
    for (int i = 0; i < 6; ++i) s += r[i] * fit.coeffs[i];
    fit.max_residual = std::max(fit.max_residual, std::abs(s));
  }
  fit.discriminant = fit.coeffs[1] * fit.coeffs[1] - 4.0 * fit.coeffs[0] * fit.coeffs[2];
  return fit;
}

}  // namespace oqw
