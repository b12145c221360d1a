#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "json.hpp"
#include "oqw/analysis.hpp"
#include "oqw/spectral.hpp"

namespace oqw::cli {

namespace {

bool wants(const RunConfig& cfg, std::string_view key) {
  return std::find(cfg.outputs.begin(), cfg.outputs.end(), key) != cfg.outputs.end();
}

struct Column {
  std::string name;
  std::optional<double> value;
};

std::vector<Column> record_columns(const RunConfig& cfg, const TrajectoryRecord& r) {
  std::vector<Column> cols;
  if (wants(cfg, "dist")) {
    for (std::size_t x = 0; x < r.position_dist.size(); ++x)
      cols.push_back({"dist_" + std::to_string(x + 1), r.position_dist[x]});
  }
  if (wants(cfg, "bloch")) {
    cols.push_back({"bloch_x", r.bloch.x});
    cols.push_back({"bloch_y", r.bloch.y});
    cols.push_back({"bloch_z", r.bloch.z});
  }
  if (wants(cfg, "purity")) cols.push_back({"purity", r.purity});
  if (wants(cfg, "coin_purity")) cols.push_back({"coin_purity", r.coin_purity});
  if (wants(cfg, "delta")) cols.push_back({"delta", r.delta});
  if (wants(cfg, "min_pt")) cols.push_back({"min_pt_eig", r.min_pt_eig});
  if (wants(cfg, "maxmix_dist")) cols.push_back({"maxmix_dist", r.dist_to_maxmix});
  return cols;
}

/// Streams ρ(0..steps) with one-step lookahead so Δ(t) is available per record.
void stream_trajectory(const WalkModel& model, const DensityMatrix& rho0, int steps,
                       const std::function<void(const TrajectoryRecord&, const DensityMatrix&)>& sink) {
  DensityMatrix current = rho0;
  for (int t = 0; t <= steps; ++t) {
    const double lo = current.min_eigenvalue();
    if (lo < -Tolerances::positivity) {
      throw InvariantViolation("positivity breached at step " + std::to_string(t) + " (min eigenvalue " +
                               std::to_string(lo) + ")");
    }
    if (std::abs(trace(current.matrix()) - 1.0) > Tolerances::positivity) {
      throw InvariantViolation("trace breached at step " + std::to_string(t));
    }
    std::optional<DensityMatrix> next;
    if (t < steps) next = model.step(current);
    const std::array<DensityMatrix, 1> one{current};
    auto rec = trajectory_records(one, t).front();
    if (next) rec.delta = delta_metric(current, *next);
    sink(rec, current);
    if (next) current = std::move(*next);
  }
}

void write_header_line(std::ostream& out, Format fmt, const std::string& echo) {
  if (fmt == Format::csv) {
    out << "# " << echo << '\n';
  } else {
    out << R"({"config":)" << echo << "}\n";
  }
}

void write_row(std::ostream& out, Format fmt, const std::vector<Column>& cols) {
  if (fmt == Format::csv) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out << ',';
      if (cols[i].value) out << format_double(*cols[i].value);
    }
    out << '\n';
  } else {
    nlohmann::ordered_json j;
    for (const auto& c : cols) {
      if (c.value)
        j[c.name] = *c.value;
      else
        j[c.name] = nullptr;
    }
    out << j.dump() << '\n';
  }
}

void write_column_names(std::ostream& out, Format fmt, const std::vector<Column>& cols) {
  if (fmt != Format::csv) return;
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << csv_field(cols[i].name);
  out << '\n';
}

}  // namespace

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  const WalkModel model(cfg.params());
  write_header_line(out, cfg.format, cfg.echo_json("simulate"));
  bool first = true;
  stream_trajectory(model, cfg.initial_state(), cfg.steps, [&](const TrajectoryRecord& r, const DensityMatrix&) {
    std::vector<Column> cols{{"t", static_cast<double>(r.t)}};
    auto rest = record_columns(cfg, r);
    cols.insert(cols.end(), rest.begin(), rest.end());
    if (first) write_column_names(out, cfg.format, cols);
    first = false;
    write_row(out, cfg.format, cols);
  });
  return ExitCode::ok;
}

int cmd_attractor(const RunConfig& cfg, std::ostream& out) {
  const auto params = cfg.params();
  AttractorBasis basis = [&] {
    try {
      return attractor_basis(params);
    } catch (const InvalidParams& e) {
      throw ConfigError(std::string("unclassifiable parameters: ") + e.what());
    }
  }();

  std::vector<DarkState> dark;
  if (basis.regime == Regime::oscillatory) dark = dark_states(params.n(), params.phi1() == 0.0 ? 0 : 1);

  nlohmann::ordered_json head = nlohmann::ordered_json::parse(cfg.echo_json("attractor"));
  head["regime"] = to_string(basis.regime);
  head["operators"] = basis.operators.size();
  head["dark_states"] = dark.size();
  write_header_line(out, cfg.format, head.dump());

  const std::vector<std::string> names = {"kind",           "label",           "lambda_re",
                                          "lambda_im",      "residual_walk",   "residual_kicked",
                                          "residual_phase", "coin_purity"};
  auto emit = [&](const std::string& kind, const std::string& label, cplx lambda, std::optional<double> rw,
                  std::optional<double> rk, std::optional<double> rp, std::optional<double> purity) {
    if (cfg.format == Format::csv) {
      auto num = [](std::optional<double> v) { return v ? format_double(*v) : std::string(); };
      out << kind << ',' << csv_field(label) << ',' << format_double(lambda.real()) << ','
          << format_double(lambda.imag()) << ',' << num(rw) << ',' << num(rk) << ',' << num(rp) << ',' << num(purity)
          << '\n';
    } else {
      nlohmann::ordered_json j;
      j["kind"] = kind;
      j["label"] = label;
      j["lambda_re"] = lambda.real();
      j["lambda_im"] = lambda.imag();
      auto put = [&](const char* key, std::optional<double> v) {
        if (v)
          j[key] = *v;
        else
          j[key] = nullptr;
      };
      put("residual_walk", rw);
      put("residual_kicked", rk);
      put("residual_phase", rp);
      put("coin_purity", purity);
      out << j.dump() << '\n';
    }
  };

  if (cfg.format == Format::csv) {
    for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
    out << '\n';
  }
  for (const auto& op : basis.operators) {
    const auto res = verify_eigenoperator(op.op, op.eigenvalue, params);
    emit("operator", op.label, op.eigenvalue, res.walk, res.kicked, res.phase, std::nullopt);
  }
  const WalkModel model(params);
  for (const auto& d : dark) {
    const auto amps = d.vector.amplitudes();
    std::vector<cplx> target(amps.begin(), amps.end());
    for (auto& v : target) v *= d.eigenvalue;
    auto residual = [&](const CMatrix& u) {
      const auto applied = apply(u, amps);
      double m = 0.0;
      for (std::size_t i = 0; i < applied.size(); ++i) m = std::max(m, std::abs(applied[i] - target[i]));
      return m;
    };
    const CMatrix reduced = partial_trace_position(CMatrix::outer(amps, amps), params.n());
    emit("dark_state", "phi" + std::to_string(d.k) + (d.sign == Sign::plus ? "+" : "-"), d.eigenvalue,
         residual(model.walk_unitary()), residual(model.kicked_unitary()), std::nullopt,
         hs_inner(reduced, reduced).real());
  }
  return ExitCode::ok;
}

int cmd_compare(const RunConfig& cfg, std::span<const long> t_check, std::ostream& out) {
  cfg.validate();
  if (t_check.empty()) throw ConfigError("compare needs at least one time index");
  const auto params = cfg.params();
  AttractorBasis basis = [&] {
    try {
      return attractor_basis(params);
    } catch (const InvalidParams& e) {
      throw ConfigError(std::string("unclassifiable parameters: ") + e.what());
    }
  }();
  const double tol = effective_tolerance(cfg.tol);
  std::vector<long> ts(t_check.begin(), t_check.end());
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());

  nlohmann::ordered_json head = nlohmann::ordered_json::parse(cfg.echo_json("compare"));
  head["regime"] = to_string(basis.regime);
  head["effective_tol"] = tol;
  write_header_line(out, cfg.format, head.dump());
  if (cfg.format == Format::csv) out << "t,trace_distance,asymptotic_step_change,within_tol\n";

  const WalkModel model(params);
  const DensityMatrix rho0 = cfg.initial_state();
  DensityMatrix current = rho0;
  long t = 0;
  bool all_ok = true;
  for (long target : ts) {
    for (; t < target; ++t) current = model.step(current);
    const auto asym = asymptotic_state(rho0, basis, target);
    const auto asym_next = asymptotic_state(rho0, basis, target + 1);
    const double dist = trace_distance(current.matrix(), asym.matrix());
    const double change = trace_distance(asym.matrix(), asym_next.matrix());
    const bool within = dist <= tol;
    all_ok = all_ok && within;
    if (cfg.format == Format::csv) {
      out << target << ',' << format_double(dist) << ',' << format_double(change) << ',' << (within ? 1 : 0) << '\n';
    } else {
      nlohmann::ordered_json j;
      j["t"] = target;
      j["trace_distance"] = dist;
      j["asymptotic_step_change"] = change;
      j["within_tol"] = within;
      out << j.dump() << '\n';
    }
  }
  return all_ok ? ExitCode::ok : ExitCode::tolerance_failure;
}

int cmd_sweep(const RunConfig& base, std::span<const std::string> phi1_values, const std::filesystem::path& outdir,
              int jobs, std::ostream& log) {
  if (phi1_values.empty()) throw ConfigError("sweep needs at least one phi1 value");
  std::vector<RunConfig> configs;
  for (const auto& phi1 : phi1_values) {
    RunConfig c = base;
    c.phi1 = phi1;
    c.validate();
    configs.push_back(std::move(c));
  }
  std::error_code ec;
  std::filesystem::create_directories(outdir, ec);
  if (ec || !std::filesystem::is_directory(outdir)) throw ConfigError("cannot create output directory " + outdir.string());

  const std::string ext = base.format == Format::csv ? ".csv" : ".jsonl";
  std::vector<int> codes(configs.size(), ExitCode::ok);
  std::vector<std::string> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      char name[32];
      std::snprintf(name, sizeof name, "sweep_%03zu", i);
      std::ofstream file(outdir / (std::string(name) + ext));
      if (!file) {
        codes[i] = ExitCode::config_error;
        errors[i] = "cannot open output file";
        continue;
      }
      try {
        codes[i] = cmd_simulate(configs[i], file);
      } catch (const InvariantViolation& e) {
        codes[i] = ExitCode::invariant_error;
        errors[i] = e.what();
      } catch (const std::exception& e) {
        codes[i] = ExitCode::config_error;
        errors[i] = e.what();
      }
    }
  };
  const int nthreads = std::clamp(jobs, 1, static_cast<int>(configs.size()));
  {
    std::vector<std::jthread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
  }
  int worst = ExitCode::ok;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "sweep_%03zu", i);
    log << name << ext << " phi1=" << configs[i].phi1 << " exit=" << codes[i];
    if (!errors[i].empty()) log << " error=" << errors[i];
    log << '\n';
    worst = std::max(worst, codes[i]);
  }
  return worst;
}

}  // namespace oqw::cli
