#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "oqw/qops.hpp"
#include "oqw/walk.hpp"

namespace oqw::cli {

enum ExitCode : int { ok = 0, config_error = 2, invariant_error = 3, tolerance_failure = 4 };

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Accepts `pi`, `-pi/2`, `3pi/10`, `3*pi/10`, `2pi/3` and plain decimals.
double parse_angle(std::string_view text);

/// Named kets `0`, `1`, `+`, `-`, `+i`, `-i`, or `theta,alpha,gamma` (angles as
/// in parse_angle) for the mixed parametrization. Returns a 2x2 coin density matrix.
CMatrix parse_coin(std::string_view text);

std::vector<double> parse_angle_list(std::string_view text);
/// `500:510` (inclusive range) or `1,5,9`.
std::vector<long> parse_time_list(std::string_view text);

enum class Format { csv, jsonl };
Format parse_format(std::string_view text);
std::string to_string(Format f);

struct RunConfig {
  int n = 3;
  double eta = 0.5;
  std::string phi0 = "pi";
  std::string phi1 = "0";
  std::optional<int> init_pos;  ///< defaults to the marked site n
  std::string init_coin = "1";
  int steps = 100;
  std::vector<std::string> outputs = {"dist", "bloch", "purity", "coin_purity", "delta", "min_pt", "maxmix_dist"};
  Format format = Format::csv;
  double tol = 1e-6;

  ChannelParams params() const;
  DensityMatrix initial_state() const;
  int resolved_init_pos() const { return init_pos.value_or(n); }
  /// Rejects invalid combinations with ConfigError.
  void validate() const;
  /// One-line JSON echo of the fully resolved configuration.
  std::string echo_json(std::string_view command) const;
};

/// Tolerance after applying the OQW_TOL_OVERRIDE environment variable.
double effective_tolerance(double tol);

/// Shortest round-trip decimal representation.
std::string format_double(double v);
/// RFC-4180 field quoting.
std::string csv_field(std::string_view s);

int cmd_simulate(const RunConfig& cfg, std::ostream& out);
int cmd_attractor(const RunConfig& cfg, std::ostream& out);
int cmd_compare(const RunConfig& cfg, std::span<const long> t_check, std::ostream& out);
int cmd_scenario(std::string_view id, const std::filesystem::path& outdir, std::ostream& log);
/// Runs one simulation per phi1 value on `jobs` workers; each writes its own file.
int cmd_sweep(const RunConfig& base, std::span<const std::string> phi1_values, const std::filesystem::path& outdir,
              int jobs, std::ostream& log);

struct ScenarioPreset {
  std::string_view id;
  std::string_view kind;
  int n;
  double eta;
  std::string_view phi0;
  std::string_view phi1;  ///< comma-separated when the figure compares several values
  int init_pos;
  std::string_view coins;  ///< `;`-separated coin specs
  int steps;
  int record_from;
  std::string_view caption;
};

std::span<const ScenarioPreset> scenario_presets();
const ScenarioPreset& find_scenario(std::string_view id);

int run_main(int argc, char** argv);

}  // namespace oqw::cli
