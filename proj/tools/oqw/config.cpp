#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "cli.hpp"
#include "json.hpp"
#include "oqw/analysis.hpp"

namespace oqw::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_number(std::string_view s, std::string_view whole) {
  s = trim(s);
  double v = 0.0;
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (s.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ConfigError("cannot parse number '" + std::string(s) + "' in '" + std::string(whole) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

double parse_angle(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw ConfigError("empty angle");
  double sign = 1.0;
  if (s.front() == '-' || s.front() == '+') {
    sign = s.front() == '-' ? -1.0 : 1.0;
    s.remove_prefix(1);
  }
  std::string_view numer = s;
  std::string_view denom;
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    numer = trim(s.substr(0, slash));
    denom = trim(s.substr(slash + 1));
    if (denom.empty()) throw ConfigError("missing denominator in angle '" + std::string(text) + "'");
  }
  double value = 0.0;
  if (const auto p = numer.find("pi"); p != std::string_view::npos) {
    if (p + 2 != numer.size()) throw ConfigError("unexpected text after 'pi' in '" + std::string(text) + "'");
    std::string_view coef = trim(numer.substr(0, p));
    if (!coef.empty() && coef.back() == '*') coef = trim(coef.substr(0, coef.size() - 1));
    value = (coef.empty() ? 1.0 : parse_number(coef, text)) * std::numbers::pi;
  } else {
    value = parse_number(numer, text);
  }
  if (!denom.empty()) {
    const double d = parse_number(denom, text);
    if (d == 0.0) throw ConfigError("zero denominator in angle '" + std::string(text) + "'");
    value /= d;
  }
  return sign * value;
}

std::vector<double> parse_angle_list(std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) out.push_back(parse_angle(part));
  return out;
}

std::vector<long> parse_time_list(std::string_view text) {
  auto to_long = [&](std::string_view s) {
    long v = 0;
    s = trim(s);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || v < 0) {
      throw ConfigError("cannot parse time index '" + std::string(s) + "'");
    }
    return v;
  };
  std::vector<long> out;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    const long lo = to_long(text.substr(0, colon));
    const long hi = to_long(text.substr(colon + 1));
    if (hi < lo) throw ConfigError("empty time range '" + std::string(text) + "'");
    for (long t = lo; t <= hi; ++t) out.push_back(t);
    return out;
  }
  for (auto part : split(text, ',')) out.push_back(to_long(part));
  return out;
}

CMatrix parse_coin(std::string_view text) {
  const std::string_view s = trim(text);
  const double h = 1.0 / std::sqrt(2.0);
  auto ket = [](cplx c0, cplx c1) {
    const std::vector<cplx> v{c0, c1};
    return CMatrix::outer(v, v);
  };
  if (s == "0") return ket(1.0, 0.0);
  if (s == "1") return ket(0.0, 1.0);
  if (s == "+") return ket(h, h);
  if (s == "-") return ket(h, -h);
  if (s == "+i") return ket(h, cplx{0.0, h});
  if (s == "-i") return ket(h, cplx{0.0, -h});
  const auto parts = split(s, ',');
  if (parts.size() != 3) {
    throw ConfigError("coin spec '" + std::string(text) + "' is neither a named ket (0,1,+,-,+i,-i) nor theta,alpha,gamma");
  }
  const CoinFit fit{parse_angle(parts[0]), parse_angle(parts[1]), parse_number(parts[2], text)};
  if (fit.gamma < 0.0 || fit.gamma > 1.0) throw ConfigError("coin purity gamma must lie in [0,1]");
  return coin_fit_initial_state(fit);
}

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::csv;
  if (text == "jsonl" || text == "json-lines") return Format::jsonl;
  throw ConfigError("unknown format '" + std::string(text) + "' (expected csv or jsonl)");
}

std::string to_string(Format f) { return f == Format::csv ? "csv" : "jsonl"; }

ChannelParams RunConfig::params() const {
  try {
    return ChannelParams(n, eta, parse_angle(phi0), parse_angle(phi1));
  } catch (const InvalidParams& e) {
    throw ConfigError(e.what());
  }
}

DensityMatrix RunConfig::initial_state() const {
  const int x = resolved_init_pos();
  if (x < 1 || x > n) throw ConfigError("--init-pos must lie in 1.." + std::to_string(n));
  return DensityMatrix::product(n, x, parse_coin(init_coin));
}

void RunConfig::validate() const {
  (void)params();
  (void)initial_state();
  if (steps < 1) throw ConfigError("--steps must be >= 1");
  static const std::vector<std::string> known = {"dist",  "bloch",  "purity",     "coin_purity",
                                                 "delta", "min_pt", "maxmix_dist"};
  for (const auto& o : outputs) {
    if (std::find(known.begin(), known.end(), o) == known.end()) throw ConfigError("unknown output '" + o + "'");
  }
  if (!(tol > 0.0)) throw ConfigError("--tol must be positive");
}

std::string RunConfig::echo_json(std::string_view command) const {
  const auto p = params();
  nlohmann::ordered_json j;
  j["command"] = std::string(command);
  j["n"] = n;
  j["eta"] = eta;
  j["phi0"] = {{"text", phi0}, {"value", p.phi0()}};
  j["phi1"] = {{"text", phi1}, {"value", p.phi1()}};
  j["init_pos"] = resolved_init_pos();
  j["init_coin"] = init_coin;
  j["steps"] = steps;
  j["outputs"] = outputs;
  j["format"] = to_string(format);
  j["tol"] = tol;
  j["seed"] = nullptr;
  return j.dump();
}

double effective_tolerance(double tol) {
  if (const char* env = std::getenv("OQW_TOL_OVERRIDE"); env != nullptr && *env != '\0') {
    const double v = parse_number(env, "OQW_TOL_OVERRIDE");
    if (!(v > 0.0)) throw ConfigError("OQW_TOL_OVERRIDE must be positive");
    return v;
  }
  return tol;
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace oqw::cli
