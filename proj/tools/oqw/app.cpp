#include <iostream>
#include <algorithm>
#include <fstream>
#include <thread>

#include "CLI11.hpp"
#include "cli.hpp"

namespace oqw::cli {

namespace {

void add_run_options(CLI::App* cmd, RunConfig& cfg, std::string& init_pos, std::string& format) {
  cmd->add_option("--n", cfg.n, "odd cycle length (>= 3)")->capture_default_str();
  cmd->add_option("--eta", cfg.eta, "phase-kick probability in [0,1]")->capture_default_str();
  cmd->add_option("--phi0", cfg.phi0, "phase on coin |0> at x=n (e.g. pi, 3pi/10, 0.5)")->capture_default_str();
  cmd->add_option("--phi1", cfg.phi1, "phase on coin |1> at x=n")->capture_default_str();
  cmd->add_option("--init-pos", init_pos, "initial position 1..n (default n)");
  cmd->add_option("--init-coin", cfg.init_coin, "coin: 0, 1, +, -, +i, -i or theta,alpha,gamma")
      ->capture_default_str();
  cmd->add_option("--format", format, "csv or jsonl")->capture_default_str();
}

void resolve(RunConfig& cfg, const std::string& init_pos, const std::string& format) {
  if (!init_pos.empty()) {
    try {
      cfg.init_pos = std::stoi(init_pos);
    } catch (const std::exception&) {
      throw ConfigError("--init-pos must be an integer");
    }
  }
  cfg.format = parse_format(format);
}

}  // namespace

int run_main(int argc, char** argv) {
  CLI::App app{"Open discrete-time quantum walks on odd cycles with a coin-dependent phase kick"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string init_pos;
  std::string format = "csv";
  std::string out_path;
  std::string outputs;
  std::string t_list = "200";
  std::string scenario_id;
  std::string outdir = ".";
  std::string phi1_list;
  int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  auto* simulate = app.add_subcommand("simulate", "evolve a state and emit one row of observables per step");
  add_run_options(simulate, cfg, init_pos, format);
  simulate->add_option("--steps", cfg.steps, "number of channel steps")->capture_default_str();
  simulate->add_option("--outputs", outputs, "comma list: dist,bloch,purity,coin_purity,delta,min_pt,maxmix_dist");
  simulate->add_option("--out", out_path, "output file (default stdout)");

  auto* attractor = app.add_subcommand("attractor", "report the attractor basis and its eigen-operator residuals");
  add_run_options(attractor, cfg, init_pos, format);
  attractor->add_option("--out", out_path, "output file (default stdout)");

  auto* compare = app.add_subcommand("compare", "trace distance between evolved and asymptotic states");
  add_run_options(compare, cfg, init_pos, format);
  compare->add_option("--t", t_list, "time indices: 500:510 or 200,300")->capture_default_str();
  compare->add_option("--tol", cfg.tol, "pass threshold (OQW_TOL_OVERRIDE overrides)")->capture_default_str();
  compare->add_option("--out", out_path, "output file (default stdout)");

  auto* scenario = app.add_subcommand("scenario", "write the data behind one figure preset");
  scenario->add_option("id", scenario_id, "fig1, fig2, fig3a, fig3b, fig3c, fig4, fig5 or fig6")->required();
  scenario->add_option("--out", outdir, "output directory")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "simulate several phi1 values in parallel, one file each");
  add_run_options(sweep, cfg, init_pos, format);
  sweep->add_option("--steps", cfg.steps, "number of channel steps")->capture_default_str();
  sweep->add_option("--phi1-list", phi1_list, "comma list of phi1 values")->required();
  sweep->add_option("--out", outdir, "output directory")->capture_default_str();
  sweep->add_option("--jobs", jobs, "worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ExitCode::ok : ExitCode::config_error;
  }

  try {
    auto with_output = [&](auto&& fn) {
      if (out_path.empty()) return fn(std::cout);
      std::ofstream f(out_path);
      if (!f) throw ConfigError("cannot write " + out_path);
      return fn(f);
    };
    if (*simulate) {
      resolve(cfg, init_pos, format);
      if (!outputs.empty()) {
        cfg.outputs.clear();
        std::string item;
        for (char c : outputs + ",") {
          if (c == ',') {
            if (!item.empty()) cfg.outputs.push_back(item);
            item.clear();
          } else {
            item += c;
          }
        }
      }
      return with_output([&](std::ostream& o) { return cmd_simulate(cfg, o); });
    }
    if (*attractor) {
      resolve(cfg, init_pos, format);
      return with_output([&](std::ostream& o) { return cmd_attractor(cfg, o); });
    }
    if (*compare) {
      resolve(cfg, init_pos, format);
      const auto ts = parse_time_list(t_list);
      cfg.steps = static_cast<int>(std::max<long>(1, *std::max_element(ts.begin(), ts.end())));
      return with_output([&](std::ostream& o) { return cmd_compare(cfg, ts, o); });
    }
    if (*scenario) return cmd_scenario(scenario_id, outdir, std::cerr);
    if (*sweep) {
      resolve(cfg, init_pos, format);
      std::vector<std::string> values;
      std::string item;
      for (char c : phi1_list + ",") {
        if (c == ',') {
          if (!item.empty()) values.push_back(item);
          item.clear();
        } else {
          item += c;
        }
      }
      return cmd_sweep(cfg, values, outdir, jobs, std::cerr);
    }
  } catch (const ConfigError& e) {
    std::cerr << "oqw: configuration error: " << e.what() << '\n';
    return ExitCode::config_error;
  } catch (const InvalidParams& e) {
    std::cerr << "oqw: configuration error: " << e.what() << '\n';
    return ExitCode::config_error;
  } catch (const InvariantViolation& e) {
    std::cerr << "oqw: numerical invariant violated: " << e.what() << '\n';
    return ExitCode::invariant_error;
  }
  return ExitCode::ok;
}

}  // namespace oqw::cli
