#include "oqw/spectral.hpp"

#include <cmath>
#include <numbers>

namespace oqw {

namespace {

constexpr double kPi = std::numbers::pi;

double momentum(int n, int k) { return 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n); }

void require_momentum(int n, int k) {
  require_odd_cycle(n);
  if (k < 0 || k >= n) throw InvalidParams("momentum index k must lie in 0.." + std::to_string(n - 1));
}

std::vector<cplx> plane_wave_state(int n, int k, cplx coin0, cplx coin1) {
  const double theta = momentum(n, k);
  const double amp = 1.0 / std::sqrt(static_cast<double>(n));
  std::vector<cplx> v(static_cast<std::size_t>(2 * n));
  for (int x = 1; x <= n; ++x) {
    const cplx wave = std::polar(amp, theta * x);
    v[BasisIndex{x, 0}.flat()] = wave * coin0;
    v[BasisIndex{x, 1}.flat()] = wave * coin1;
  }
  return v;
}

bool phase_is_zero(double phi) { return phi < Tolerances::phase_zero || 2.0 * kPi - phi < Tolerances::phase_zero; }

int reflected(int n, int x) { return (n - x + n - 1) % n + 1; }

std::string sign_label(const DarkState& d) {
  return std::to_string(d.k) + (d.sign == Sign::plus ? "+" : "-");
}

}  // namespace

WalkEigenvalues walk_eigenvalues(int n, int k) {
  require_momentum(n, k);
  const double theta = momentum(n, k);
  const double c = std::cos(theta);
  const double root = std::sqrt(1.0 + std::sin(theta) * std::sin(theta));
  const cplx plus = cplx{c, root} / std::sqrt(2.0);
  const double phase = kPi / 2.0 - std::atan(c / root);
  return {plus, std::conj(plus), phase};
}

MomentumMode momentum_mode(int n, int k) {
  const auto ev = walk_eigenvalues(n, k);
  MomentumMode m;
  m.k = k;
  m.lambda_plus = ev.plus;
  m.lambda_minus = ev.minus;
  m.phase = ev.phase;
  m.chi = std::polar(std::sqrt(2.0), ev.phase + momentum(n, k));
  m.normalizer = 1.0 / std::sqrt(4.0 - 2.0 * m.chi.real());
  m.alpha_plus = m.normalizer;
  m.beta_plus = m.normalizer * (m.chi - 1.0);
  m.alpha_minus = m.normalizer * (1.0 - std::conj(m.chi));
  m.beta_minus = m.normalizer;
  return m;
}

Spectrum walk_spectrum(int n) {
  require_odd_cycle(n);
  Spectrum s;
  s.n = n;
  for (int k = 0; k < n; ++k) s.modes.push_back(momentum_mode(n, k));
  return s;
}

std::pair<PureState, PureState> walk_eigenstates(int n, int k) {
  const auto m = momentum_mode(n, k);
  return {PureState(plane_wave_state(n, k, m.alpha_plus, m.beta_plus)),
          PureState(plane_wave_state(n, k, m.alpha_minus, m.beta_minus))};
}

std::vector<DarkState> dark_states(int n, int marked_coin) {
  require_odd_cycle(n);
  if (marked_coin != 0 && marked_coin != 1) throw InvalidParams("marked coin must be 0 or 1");
  std::vector<DarkState> out;
  for (int k = 1; k <= (n - 1) / 2; ++k) {
    const auto mk = momentum_mode(n, k);
    const auto mmk = momentum_mode(n, n - k);
    for (Sign s : {Sign::plus, Sign::minus}) {
      const bool plus = s == Sign::plus;
      const cplx c0k = plus ? mk.alpha_plus : mk.alpha_minus;
      const cplx c1k = plus ? mk.beta_plus : mk.beta_minus;
      const cplx c0m = plus ? mmk.alpha_plus : mmk.alpha_minus;
      const cplx c1m = plus ? mmk.beta_plus : mmk.beta_minus;
      // <n, marked| k s> ∝ w_k since the plane wave is 1/√n at x = n.
      const cplx wk = marked_coin == 0 ? c0k : c1k;
      const cplx wm = marked_coin == 0 ? c0m : c1m;
      const double denom = std::sqrt(std::norm(wk) + std::norm(wm));
      cplx a = wm / denom;
      cplx b = -wk / denom;

      const auto ket_k = plane_wave_state(n, k, c0k, c1k);
      const auto ket_m = plane_wave_state(n, n - k, c0m, c1m);
      std::vector<cplx> v(ket_k.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = a * ket_k[i] + b * ket_m[i];

      const cplx anchor = v[BasisIndex{1, marked_coin}.flat()];
      const cplx gauge = std::conj(anchor) / std::abs(anchor);
      for (auto& amp : v) amp *= gauge;
      a *= gauge;
      b *= gauge;

      DarkState d{k, s, PureState(std::move(v)), plus ? mk.lambda_plus : mk.lambda_minus, a, b};
      out.push_back(std::move(d));
    }
  }
  return out;
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::mixed_max:
      return "MIXED_MAX";
    case Regime::mixed_partial:
      return "MIXED_PARTIAL";
    case Regime::oscillatory:
      return "OSCILLATORY";
  }
  return "UNKNOWN";
}

Regime classify_regime(const ChannelParams& p) {
  if (p.eta() <= 0.0 || p.eta() >= 1.0) {
    throw InvalidParams("attractor analysis needs 0 < eta < 1 (eta=" + std::to_string(p.eta()) +
                        " makes the channel unitary)");
  }
  const bool zero0 = phase_is_zero(p.phi0());
  const bool zero1 = phase_is_zero(p.phi1());
  if (zero0 && zero1) throw InvalidParams("phi0 = phi1 = 0: the phase kick is the identity");
  if (zero0 || zero1) return Regime::oscillatory;
  double diff = std::abs(p.phi0() - p.phi1());
  diff = std::min(diff, 2.0 * kPi - diff);
  return diff < Tolerances::phase_zero ? Regime::mixed_partial : Regime::mixed_max;
}

CMatrix identity_operator(int n) { return CMatrix::identity(static_cast<std::size_t>(2 * n)); }

CMatrix reflection_sigma_y_operator(int n) {
  const auto un = static_cast<std::size_t>(n);
  std::vector<cplx> r(un * un);
  for (int x = 1; x <= n; ++x) r[(x - 1) * un + (reflected(n, x) - 1)] = 1.0;
  return kron(CMatrix(un, un, std::move(r)), pauli::y());
}

AttractorBasis attractor_basis(const ChannelParams& p) {
  const Regime regime = classify_regime(p);
  const int n = p.n();
  const double inv_norm = 1.0 / std::sqrt(2.0 * n);
  AttractorBasis basis{regime, p, {}};

  switch (regime) {
    case Regime::mixed_max:
      basis.operators.push_back({inv_norm * identity_operator(n), 1.0, "X1"});
      break;
    case Regime::mixed_partial:
      basis.operators.push_back({inv_norm * identity_operator(n), 1.0, "X1"});
      basis.operators.push_back({inv_norm * reflection_sigma_y_operator(n), 1.0, "X2"});
      break;
    case Regime::oscillatory: {
      const int marked = phase_is_zero(p.phi1()) ? 0 : 1;
      const auto dark = dark_states(n, marked);
      CMatrix complement = identity_operator(n);
      for (const auto& d : dark) complement = complement - CMatrix::outer(d.vector.amplitudes(), d.vector.amplitudes());
      const double complement_norm = std::sqrt(static_cast<double>(n + 1));
      basis.operators.push_back({(1.0 / complement_norm) * complement, 1.0, "Ibar"});
      for (const auto& di : dark) {
        for (const auto& dj : dark) {
          basis.operators.push_back({CMatrix::outer(di.vector.amplitudes(), dj.vector.amplitudes()),
                                     di.eigenvalue * std::conj(dj.eigenvalue),
                                     "|phi" + sign_label(di) + "><phi" + sign_label(dj) + "|"});
        }
      }
      break;
    }
  }
  return basis;
}

DensityMatrix asymptotic_state(const DensityMatrix& rho0, const AttractorBasis& basis, long t) {
  if (rho0.dim() != basis.params.dim()) throw DimensionError("asymptotic_state: state dimension does not match basis");
  CMatrix acc = CMatrix::zeros(rho0.dim(), rho0.dim());
  for (const auto& x : basis.operators) {
    const cplx coeff = hs_inner(x.op, rho0.matrix());
    const cplx rot = std::polar(1.0, static_cast<double>(t) * std::arg(x.eigenvalue));
    acc = acc + (coeff * rot) * x.op;
  }
  return DensityMatrix(std::move(acc));
}

EqualPhaseStationary stationary_equal_phases(const DensityMatrix& rho0, int n) {
  if (rho0.dim() != static_cast<std::size_t>(2 * n)) throw DimensionError("stationary_equal_phases: dimension mismatch");
  const CMatrix x2 = reflection_sigma_y_operator(n);
  const double xi = hs_inner(x2, rho0.matrix()).real();
  if (std::abs(xi) > 1.0 + Tolerances::algebraic) {
    throw InvalidParams("overlap xi=" + std::to_string(xi) + " exceeds 1 in magnitude; input is not a state");
  }
  const double scale = 1.0 / (2.0 * n);
  const auto un = static_cast<std::size_t>(n);
  const CMatrix id_x = CMatrix::identity(un);
  std::vector<cplx> r(un * un);
  for (int x = 1; x <= n; ++x) r[(x - 1) * un + (reflected(n, x) - 1)] = 1.0;
  const CMatrix refl(un, un, std::move(r));
  const CMatrix id_c = CMatrix::identity(2);

  return {DensityMatrix(scale * (identity_operator(n) + cplx{xi} * x2)), xi,
          scale * kron(id_x + refl, id_c + pauli::y()), scale * kron(id_x - refl, id_c - pauli::y())};
}

EigenoperatorResidual verify_eigenoperator(const CMatrix& x, cplx lambda, const ChannelParams& p) {
  const WalkModel model(p);
  if (x.rows() != p.dim() || x.cols() != p.dim()) throw DimensionError("verify_eigenoperator: dimension mismatch");
  const CMatrix lx = lambda * x;
  const auto& u0 = model.walk_unitary();
  const auto& u1 = model.kicked_unitary();
  const auto& v = model.phase_unitary();
  EigenoperatorResidual r;
  r.walk = max_abs_diff(u0 * x * dagger(u0), lx);
  r.kicked = max_abs_diff(u1 * x * dagger(u1), lx);
  r.phase = max_abs_diff(v * x * dagger(v), x);
  return r;
}

}  // namespace oqw
