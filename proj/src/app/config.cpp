#include "app/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

#include "common/error.hpp"

namespace electroflow::app {

namespace {

enum class Type { real, integer, text, real_list, int_list, force_modes, potential_modes };

struct KeySpec {
  std::string name;
  Type type;
  enum class Need { required, defaulted, optional } need;
  std::string default_value;
  std::string description;
  // Returns an error fragment for out-of-range canonical values.
  std::function<std::optional<std::string>(const std::string&)> check;
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

std::optional<double> to_real(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (*end != '\0' || !std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<long long> to_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const long long v = std::strtoll(s.c_str(), &end, 10);
  if (*end != '\0') return std::nullopt;
  return v;
}

std::vector<double> numbers_of(const std::string& s) {
  std::vector<double> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    auto v = to_real(tok);
    if (!v) throw std::invalid_argument(tok);
    out.push_back(*v);
  }
  return out;
}

// Canonical form of a raw value, or nullopt if it does not parse.
std::optional<std::string> canonical(Type type, const std::string& raw) {
  try {
    switch (type) {
      case Type::real: {
        auto v = to_real(raw);
        return v ? std::optional(fmt(*v)) : std::nullopt;
      }
      case Type::integer: {
        auto v = to_int(raw);
        return v ? std::optional(std::to_string(*v)) : std::nullopt;
      }
      case Type::text:
        if (raw.empty()) return std::nullopt;
        return raw;
      case Type::real_list:
      case Type::int_list: {
        if (raw.empty()) return std::string();
        std::string out;
        for (const auto& item : split(raw, ',')) {
          std::optional<std::string> c = type == Type::real_list ? canonical(Type::real, item)
                                                                 : canonical(Type::integer, item);
          if (!c) return std::nullopt;
          out += (out.empty() ? "" : ",") + *c;
        }
        return out;
      }
      case Type::force_modes:
      case Type::potential_modes: {
        if (raw.empty()) return std::string();
        const std::size_t width = type == Type::force_modes ? 6 : 4;
        std::string out;
        for (const auto& item : split(raw, ';')) {
          const auto v = numbers_of(item);
          if (v.size() != width) return std::nullopt;
          if (v[0] != std::round(v[0]) || v[1] != std::round(v[1])) return std::nullopt;
          std::string mode = std::to_string(static_cast<long long>(v[0])) + " " +
                             std::to_string(static_cast<long long>(v[1]));
          for (std::size_t i = 2; i < width; ++i) mode += " " + fmt(v[i]);
          out += (out.empty() ? "" : "; ") + mode;
        }
        return out;
      }
    }
  } catch (const std::invalid_argument&) {
  }
  return std::nullopt;
}

using Check = std::function<std::optional<std::string>(const std::string&)>;

Check real_range(double lo, bool lo_open, double hi, bool hi_open) {
  return [=](const std::string& v) -> std::optional<std::string> {
    const double x = std::strtod(v.c_str(), nullptr);
    const bool ok = (lo_open ? x > lo : x >= lo) && (hi_open ? x < hi : x <= hi);
    if (ok) return std::nullopt;
    std::string range = std::string(lo_open ? "(" : "[") + (std::isinf(lo) ? "-inf" : fmt(lo)) + ", " +
                        (std::isinf(hi) ? "inf" : fmt(hi)) + (hi_open ? ")" : "]");
    return "outside " + range;
  };
}

Check int_min(long long lo) {
  return [=](const std::string& v) -> std::optional<std::string> {
    if (std::strtoll(v.c_str(), nullptr, 10) >= lo) return std::nullopt;
    return "must be >= " + std::to_string(lo);
  };
}

Check list_each(Check each) {
  return [=](const std::string& v) -> std::optional<std::string> {
    if (v.empty()) return std::nullopt;
    for (const auto& item : split(v, ','))
      if (auto e = each(item)) return "entry " + item + " " + *e;
    return std::nullopt;
  };
}

Check one_of(std::vector<std::string> allowed) {
  return [=](const std::string& v) -> std::optional<std::string> {
    if (std::find(allowed.begin(), allowed.end(), v) != allowed.end()) return std::nullopt;
    std::string list;
    for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
    return "must be one of: " + list;
  };
}

constexpr double inf = std::numeric_limits<double>::infinity();

const std::vector<KeySpec>& schema() {
  using N = KeySpec::Need;
  static const std::vector<KeySpec> keys = {
      {"scenario", Type::text, N::required, "", "scenario to run", one_of(scenario_names())},
      {"alpha", Type::real, N::required, "", "fractional dissipation exponent", real_range(0, true, 1, false)},
      {"n", Type::integer, N::required, "", "grid points per direction (even, >= 8)",
       [](const std::string& v) -> std::optional<std::string> {
         const long long x = std::strtoll(v.c_str(), nullptr, 10);
         if (x >= 8 && x % 2 == 0 && x <= 4096) return std::nullopt;
         return "must be an even integer in [8, 4096]";
       }},
      {"dt", Type::real, N::required, "", "time step", real_range(0, true, inf, true)},
      {"T", Type::real, N::required, "", "final time", real_range(0, false, inf, true)},
      {"scheme", Type::text, N::defaulted, "IFRK2", "IFRK2 or IFRK4", one_of({"IFRK2", "IFRK4"})},
      {"epsilon", Type::real, N::defaulted, "0", "regularization eps (0 = unregularized)",
       real_range(0, false, inf, true)},
      {"galerkin_n", Type::integer, N::optional, "", "retain the galerkin_n lowest Laplacian eigenvalues",
       int_min(1)},
      {"seed", Type::integer, N::optional, "", "random seed (required for random data)", int_min(0)},
      {"cfl_limit", Type::real, N::defaulted, "0.5", "CFL guard on dt*max|u|*(n/2)", real_range(0, true, inf, true)},
      {"reorth_interval", Type::integer, N::defaulted, "1", "tangent re-orthonormalization interval (steps)",
       int_min(1)},
      {"sample_every", Type::integer, N::defaulted, "1", "diagnostics sampling interval (steps)", int_min(1)},
      {"output_dir", Type::text, N::defaulted, "out", "output directory", {}},
      {"snapshot_times", Type::real_list, N::defaulted, "", "times at which EFSNAP1 snapshots are written",
       list_each(real_range(0, false, inf, true))},
      {"ic.kind", Type::text, N::defaulted, "analytic", "analytic | random | single_mode | snapshot",
       one_of({"analytic", "random", "single_mode", "snapshot"})},
      {"ic.sigma", Type::real, N::defaulted, "0.5", "analytic data decay e^{-sigma|k|}",
       real_range(0, true, inf, true)},
      {"ic.slope", Type::real, N::defaulted, "3", "random data spectral slope", real_range(-inf, true, inf, true)},
      {"ic.q_norm", Type::real, N::defaulted, "1", "L2 norm of q0", real_range(0, false, inf, true)},
      {"ic.u_norm", Type::real, N::defaulted, "1", "L2 norm of u0", real_range(0, false, inf, true)},
      {"ic.kx", Type::integer, N::defaulted, "1", "single_mode wavenumber x", {}},
      {"ic.ky", Type::integer, N::defaulted, "0", "single_mode wavenumber y", {}},
      {"ic.amplitude", Type::real, N::defaulted, "1", "single_mode amplitude", {}},
      {"ic.q_path", Type::text, N::optional, "", "snapshot of q", {}},
      {"ic.u1_path", Type::text, N::optional, "", "snapshot of u1", {}},
      {"ic.u2_path", Type::text, N::optional, "", "snapshot of u2", {}},
      {"forcing.f_modes", Type::force_modes, N::defaulted, "",
       "body force modes 'kx ky Re f1 Im f1 Re f2 Im f2; ...'", {}},
      {"forcing.phi_modes", Type::potential_modes, N::defaulted, "", "potential modes 'kx ky Re Im; ...'", {}},
      {"decay.seeds", Type::int_list, N::optional, "", "seeds of the random ensemble", list_each(int_min(0))},
      {"decay.fit_start", Type::real, N::defaulted, "2", "start of the rate-fit window", {}},
      {"decay.fit_end", Type::real, N::defaulted, "10", "end of the rate-fit window", {}},
      {"decay.final_ratio", Type::real, N::optional, "", "required |w(T)|_H / |w(0)|_H bound",
       real_range(0, true, inf, true)},
      {"lp.tolerance", Type::real, N::defaulted, "1e-6", "relative growth allowed per sample",
       real_range(0, false, inf, true)},
      {"ball.sizes", Type::real_list, N::defaulted, "0.1,1,10", "H norms of the ensemble data",
       list_each(real_range(0, true, inf, true))},
      {"ball.window_start", Type::real, N::optional, "", "start of the band window (default 0.75 T)", {}},
      {"ball.band_factor", Type::real, N::defaulted, "1.2", "allowed spread of per-run bands",
       real_range(1, false, inf, true)},
      {"lipschitz.h", Type::real_list, N::defaulted, "1e-4,1e-6", "perturbation sizes",
       list_each(real_range(0, true, inf, true))},
      {"gevrey.times", Type::real_list, N::defaulted, "0.05,0.1,0.2,0.4", "times at which the Gevrey radius is estimated", list_each(real_range(0, true, inf, true))},
      {"eps.ladder", Type::real_list, N::defaulted, "1e-1,1e-2,1e-3,1e-4", "epsilon values",
       list_each(real_range(0, true, inf, true))},
      {"galerkin.ladder", Type::int_list, N::defaulted, "4,16,64", "Galerkin sizes", list_each(int_min(1))},
      {"trace.N", Type::int_list, N::defaulted, "4,8,16,32", "frame sizes", list_each(int_min(1))},
      {"trace.spinup", Type::real, N::defaulted, "0", "time integrated before tangents start",
       real_range(0, false, inf, true)},
      {"trace.average_from", Type::real, N::defaulted, "0", "averaging starts this long after spin-up",
       real_range(0, false, inf, true)},
      {"trace.sample_every", Type::integer, N::defaulted, "10", "trace sampling interval (steps)", int_min(1)},
      {"trace.frame", Type::text, N::defaulted, "random", "initial frame: modes | random",
       one_of({"modes", "random"})},
  };
  return keys;
}

const KeySpec* find_key(const std::string& name) {
  for (const auto& k : schema())
    if (k.name == name) return &k;
  return nullptr;
}

[[noreturn]] void config_error(int line, const std::string& msg) {
  fail(ErrorCode::config, (line > 0 ? "line " + std::to_string(line) + ": " : std::string()) + msg);
}

void derive(RunConfig& c) {
  c.scenario = c.text("scenario");
  auto& s = c.solver;
  s.alpha = c.real("alpha");
  s.n = static_cast<int>(c.integer("n"));
  s.dt = c.real("dt");
  s.scheme = *solver::parse_scheme(c.text("scheme"));
  s.epsilon = c.real("epsilon");
  if (c.has("galerkin_n")) s.galerkin_n = static_cast<int>(c.integer("galerkin_n"));
  c.has_seed = c.has("seed");
  s.seed = c.has_seed ? static_cast<std::uint64_t>(c.integer("seed")) : 0;
  s.cfl_limit = c.real("cfl_limit");
  s.reorth_interval = static_cast<int>(c.integer("reorth_interval"));
  c.final_time = c.real("T");
  c.sample_every = static_cast<int>(c.integer("sample_every"));
  c.output_dir = c.text("output_dir");
  c.snapshot_times = c.reals("snapshot_times");

  auto& ic = c.initial;
  ic.kind = c.text("ic.kind");
  ic.sigma = c.real("ic.sigma");
  ic.slope = c.real("ic.slope");
  ic.q_norm = c.real("ic.q_norm");
  ic.u_norm = c.real("ic.u_norm");
  ic.kx = static_cast<int>(c.integer("ic.kx"));
  ic.ky = static_cast<int>(c.integer("ic.ky"));
  ic.amplitude = c.real("ic.amplitude");
  if (c.has("ic.q_path")) ic.q_path = c.text("ic.q_path");
  if (c.has("ic.u1_path")) ic.u1_path = c.text("ic.u1_path");
  if (c.has("ic.u2_path")) ic.u2_path = c.text("ic.u2_path");

  for (const auto& item : split(c.text("forcing.f_modes"), ';')) {
    if (item.empty()) continue;
    const auto v = numbers_of(item);
    c.forcing.f_modes.push_back({static_cast<int>(v[0]), static_cast<int>(v[1]), {v[2], v[3]}, {v[4], v[5]}});
  }
  for (const auto& item : split(c.text("forcing.phi_modes"), ';')) {
    if (item.empty()) continue;
    const auto v = numbers_of(item);
    c.forcing.phi_modes.push_back({static_cast<int>(v[0]), static_cast<int>(v[1]), {v[2], v[3]}});
  }
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"decay",         "lp_decay",        "absorbing_ball", "lipschitz",
                                                 "gevrey",        "eps_convergence", "galerkin",       "volume_trace"};
  return names;
}

double RunConfig::real(const std::string& key) const { return std::strtod(values.at(key).c_str(), nullptr); }

long long RunConfig::integer(const std::string& key) const { return std::strtoll(values.at(key).c_str(), nullptr, 10); }

const std::string& RunConfig::text(const std::string& key) const { return values.at(key); }

std::vector<double> RunConfig::reals(const std::string& key) const {
  std::vector<double> out;
  const auto& v = values.at(key);
  if (v.empty()) return out;
  for (const auto& item : split(v, ',')) out.push_back(std::strtod(item.c_str(), nullptr));
  return out;
}

std::vector<long long> RunConfig::integers(const std::string& key) const {
  std::vector<long long> out;
  const auto& v = values.at(key);
  if (v.empty()) return out;
  for (const auto& item : split(v, ',')) out.push_back(std::strtoll(item.c_str(), nullptr, 10));
  return out;
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, int> seen;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) config_error(lineno, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const KeySpec* spec = find_key(key);
    if (!spec) config_error(lineno, "unknown key '" + key + "'");
    if (seen.count(key)) {
      config_error(lineno, "duplicate key '" + key + "' (first set on line " + std::to_string(seen[key]) + ")");
    }
    seen[key] = lineno;
    auto canon = canonical(spec->type, value);
    if (spec->name == "scheme" && canon) {
      if (auto s = solver::parse_scheme(*canon)) canon = solver::scheme_name(*s);
    }
    if (!canon) config_error(lineno, "cannot parse value '" + value + "' for " + key);
    if (spec->check) {
      if (auto err = spec->check(*canon)) config_error(lineno, key + " = " + value + " " + *err);
    }
    cfg.values[key] = *canon;
  }
  for (const auto& spec : schema()) {
    if (cfg.values.count(spec.name)) continue;
    if (spec.need == KeySpec::Need::required) config_error(0, "missing required key '" + spec.name + "'");
    if (spec.need == KeySpec::Need::defaulted) cfg.values[spec.name] = *canonical(spec.type, spec.default_value);
  }

  auto line_of = [&](const std::string& key) { return seen.count(key) ? seen[key] : 0; };
  if (cfg.values["ic.kind"] == "random" && !cfg.values.count("seed") && !cfg.values.count("decay.seeds")) {
    config_error(line_of("ic.kind"), "ic.kind = random requires a seed");
  }
  if (cfg.values["ic.kind"] == "snapshot" &&
      !(cfg.values.count("ic.q_path") && cfg.values.count("ic.u1_path") && cfg.values.count("ic.u2_path"))) {
    config_error(line_of("ic.kind"), "ic.kind = snapshot requires ic.q_path, ic.u1_path and ic.u2_path");
  }
  derive(cfg);
  try {
    cfg.solver.validate();
    spectral::TorusGrid grid(cfg.solver.n);
    if (cfg.solver.galerkin_n && *cfg.solver.galerkin_n > static_cast<int>(grid.size()) - 1) {
      config_error(line_of("galerkin_n"), "galerkin_n exceeds the number of nonzero modes");
    }
    solver::build_forcing(cfg.forcing, grid);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::config) throw;
    const std::string which = std::string(e.what()).find("potential") != std::string::npos ? "forcing.phi_modes"
                              : std::string(e.what()).find("forcing") != std::string::npos ? "forcing.f_modes"
                                                                                            : "";
    config_error(which.empty() ? 0 : line_of(which), e.what());
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::config, "cannot read config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string echo_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& [k, v] : cfg.values) out += k + " = " + v + "\n";
  return out;
}

std::vector<KeyDoc> config_keys() {
  std::vector<KeyDoc> out;
  for (const auto& k : schema()) {
    std::string def = k.need == KeySpec::Need::required ? "required"
                      : k.need == KeySpec::Need::optional ? "unset"
                                                          : (k.default_value.empty() ? "(empty)" : k.default_value);
    out.push_back({k.name, def, k.description});
  }
  return out;
}

}  // namespace electroflow::app
