#include <cmath>
#include <array>
#include <filesystem>
#include <fstream>
#include <ostream>

#include "cli.hpp"
#include "json.hpp"
#include "oqw/analysis.hpp"
#include "oqw/spectral.hpp"

namespace oqw::cli {

namespace {

// Figure presets. `coins` lists initial coin specs; for the attractor_bloch kind it
// lists |beta|^2 values of the coin sqrt(1-|beta|^2)|0> + |beta||1>.
constexpr ScenarioPreset kPresets[] = {
    {"fig1", "trajectory", 5, 0.5, "pi/2", "pi/3", 3, "0", 100, 0,
     "5-cycle, eta=1/2, phi0=pi/2, phi1=pi/3, init |3>|0>: relaxes to 1/10 identity"},
    {"fig2", "trajectory", 3, 0.5, "pi/10", "0", 3, "pi/2,pi/3,1", 1000, 0,
     "3-cycle, eta=1/2, phi0=pi/10, phi1=0, init |3>(|0>+e^{-i pi/3}|1>)/sqrt2: quasi-periodic"},
    {"fig3a", "bloch_section", 3, 0.5, "pi/2", "0", 1, "pi/2,pi/3,1", 2000, 1000,
     "3-cycle XZ section T=1000..2000, phi0=pi/2, phi1=0, init |1>(|0>+e^{-i pi/3}|1>)/sqrt2"},
    {"fig3b", "bloch_section", 5, 0.5, "pi/2", "0", 1, "pi/2,pi/3,1", 2000, 1000,
     "5-cycle XZ section T=1000..2000, phi0=pi/2, phi1=0, init |1>(|0>+e^{-i pi/3}|1>)/sqrt2"},
    {"fig3c", "bloch_section", 7, 0.5, "pi/2", "0", 1, "pi/2,pi/3,1", 2000, 1000,
     "7-cycle XZ section T=1000..2000, phi0=pi/2, phi1=0, init |1>(|0>+e^{-i pi/3}|1>)/sqrt2"},
    {"fig4", "relaxation", 3, 0.5, "pi", "0,pi/2,pi", 3, "1;+i", 60, 0,
     "3-cycle Delta(t) and coin purity, phi0=pi, phi1 in {0,pi/2,pi}, coins |1> and (|0>+i|1>)/sqrt2"},
    {"fig5", "attractor_bloch", 3, 0.5, "pi", "0", 3, "0;0.1;0.2;0.3;0.4;0.5;0.6;0.7;0.8;0.9;1", 200, 0,
     "3-cycle asymptotic Bloch XZ orbit versus |beta|^2, phi1=0"},
    {"fig6", "ppt_series", 3, 0.5, "pi", "0", 3, "1", 30, 1,
     "3-cycle smallest eigenvalue of the partially transposed asymptotic state, init |3>|1>"},
};

std::vector<std::string> split_list(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string preset_echo(const ScenarioPreset& p) {
  nlohmann::ordered_json j;
  j["scenario"] = std::string(p.id);
  j["kind"] = std::string(p.kind);
  j["n"] = p.n;
  j["eta"] = p.eta;
  j["phi0"] = std::string(p.phi0);
  j["phi1"] = std::string(p.phi1);
  j["init_pos"] = p.init_pos;
  j["coins"] = std::string(p.coins);
  j["steps"] = p.steps;
  j["record_from"] = p.record_from;
  j["caption"] = std::string(p.caption);
  return j.dump();
}

RunConfig preset_config(const ScenarioPreset& p, const std::string& phi1, const std::string& coin) {
  RunConfig c;
  c.n = p.n;
  c.eta = p.eta;
  c.phi0 = std::string(p.phi0);
  c.phi1 = phi1;
  c.init_pos = p.init_pos;
  c.init_coin = coin;
  c.steps = p.steps;
  return c;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path.string());
  return f;
}

void run_bloch_section(const ScenarioPreset& p, const std::filesystem::path& outdir) {
  const RunConfig cfg = preset_config(p, std::string(p.phi1), std::string(p.coins));
  const WalkModel model(cfg.params());
  auto f = open_output(outdir / (std::string(p.id) + "_bloch_xz.csv"));
  f << "# " << preset_echo(p) << "\nt,bloch_x,bloch_y,bloch_z,coin_purity\n";
  DensityMatrix rho = cfg.initial_state();
  for (int t = 0; t <= p.steps; ++t) {
    if (t >= p.record_from) {
      const auto b = bloch_vector(rho);
      f << t << ',' << format_double(b.x) << ',' << format_double(b.y) << ',' << format_double(b.z) << ','
        << format_double(coin_purity(rho)) << '\n';
    }
    if (t < p.steps) rho = model.step(rho);
  }
}

void run_relaxation(const ScenarioPreset& p, const std::filesystem::path& outdir) {
  auto f = open_output(outdir / (std::string(p.id) + "_relaxation.csv"));
  f << "# " << preset_echo(p) << "\nphi1,coin,t,delta,coin_purity\n";
  for (const auto& phi1 : split_list(p.phi1, ',')) {
    for (const auto& coin : split_list(p.coins, ';')) {
      const RunConfig cfg = preset_config(p, phi1, coin);
      const WalkModel model(cfg.params());
      DensityMatrix rho = cfg.initial_state();
      for (int t = 0; t < p.steps; ++t) {
        DensityMatrix next = model.step(rho);
        f << csv_field(phi1) << ',' << csv_field(coin) << ',' << t << ',' << format_double(delta_metric(rho, next))
          << ',' << format_double(coin_purity(rho)) << '\n';
        rho = std::move(next);
      }
    }
  }
}

void run_attractor_bloch(const ScenarioPreset& p, const std::filesystem::path& outdir) {
  const RunConfig base = preset_config(p, std::string(p.phi1), "1");
  const auto params = base.params();
  auto orbit = open_output(outdir / (std::string(p.id) + "_bloch_xz.csv"));
  auto conic = open_output(outdir / (std::string(p.id) + "_conic.csv"));
  orbit << "# " << preset_echo(p) << "\nbeta_sq,t,bloch_x,bloch_y,bloch_z\n";
  conic << "# " << preset_echo(p) << "\nbeta_sq,a,b,c,d,e,f,max_residual,discriminant\n";
  for (const auto& b2text : split_list(p.coins, ';')) {
    const double beta_sq = std::stod(b2text);
    const std::vector<cplx> coin{std::sqrt(1.0 - beta_sq), std::sqrt(beta_sq)};
    const auto rho0 = DensityMatrix::product(p.n, p.init_pos, CMatrix::outer(coin, coin));
    const auto asym = three_cycle_asymptotics(rho0, params);
    std::vector<std::array<double, 2>> pts;
    for (int t = 0; t < p.steps; ++t) {
      const auto b = asym.bloch(t);
      pts.push_back({b.x, b.z});
      orbit << b2text << ',' << t << ',' << format_double(b.x) << ',' << format_double(b.y) << ','
            << format_double(b.z) << '\n';
    }
    const auto fit = fit_conic(pts);
    conic << b2text;
    for (double c : fit.coeffs) conic << ',' << format_double(c);
    conic << ',' << format_double(fit.max_residual) << ',' << format_double(fit.discriminant) << '\n';
  }
}

void run_ppt_series(const ScenarioPreset& p, const std::filesystem::path& outdir) {
  const RunConfig cfg = preset_config(p, std::string(p.phi1), std::string(p.coins));
  const auto basis = attractor_basis(cfg.params());
  const auto rho0 = cfg.initial_state();
  auto f = open_output(outdir / (std::string(p.id) + "_min_pt.csv"));
  f << "# " << preset_echo(p) << "\nt,min_pt_eig,entangled\n";
  for (int t = p.record_from; t < p.record_from + p.steps; ++t) {
    const double m = min_pt_eigenvalue(asymptotic_state(rho0, basis, t));
    f << t << ',' << format_double(m) << ',' << (is_ppt(m) ? 0 : 1) << '\n';
  }
}

}  // namespace

std::span<const ScenarioPreset> scenario_presets() { return kPresets; }

const ScenarioPreset& find_scenario(std::string_view id) {
  for (const auto& p : kPresets)
    if (p.id == id) return p;
  std::string known;
  for (const auto& p : kPresets) known += (known.empty() ? "" : ", ") + std::string(p.id);
  throw ConfigError("unknown scenario '" + std::string(id) + "' (known: " + known + ")");
}

int cmd_scenario(std::string_view id, const std::filesystem::path& outdir, std::ostream& log) {
  const ScenarioPreset& p = find_scenario(id);
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec || !std::filesystem::is_directory(outdir)) throw ConfigError("cannot create output directory " + outdir.string());

  if (p.kind == "trajectory") {
    RunConfig cfg = preset_config(p, std::string(p.phi1), std::string(p.coins));
    auto f = open_output(outdir / (std::string(p.id) + "_trajectory.csv"));
    cmd_simulate(cfg, f);
  } else if (p.kind == "bloch_section") {
    run_bloch_section(p, outdir);
  } else if (p.kind == "relaxation") {
    run_relaxation(p, outdir);
  } else if (p.kind == "attractor_bloch") {
    run_attractor_bloch(p, outdir);
  } else if (p.kind == "ppt_series") {
    run_ppt_series(p, outdir);
  }
  log << p.id << ": wrote " << p.kind << " data to " << outdir.string() << '\n';
  return ExitCode::ok;
}

}  // namespace oqw::cli
