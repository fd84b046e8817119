#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solver/state.hpp"

namespace electroflow::app {

struct InitialSpec {
  std::string kind = "analytic";  // analytic | random | single_mode | snapshot
  double sigma = 0.5;
  double slope = 3.0;
  double q_norm = 1.0, u_norm = 1.0;
  int kx = 1, ky = 0;
  double amplitude = 1.0;
  std::filesystem::path q_path, u1_path, u2_path;
};

/// Parsed configuration. `values` holds every known key that is set, in
/// canonical text form; the typed members are derived from it.
struct RunConfig {
  std::map<std::string, std::string> values;

  std::string scenario;
  solver::SolverConfig solver;
  bool has_seed = false;
  solver::ForcingSpec forcing;
  InitialSpec initial;
  double final_time = 0.0;
  int sample_every = 1;
  std::filesystem::path output_dir;
  std::vector<double> snapshot_times;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  double real(const std::string& key) const;
  long long integer(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  std::vector<long long> integers(const std::string& key) const;

  bool operator==(const RunConfig& o) const { return values == o.values; }
};

const std::vector<std::string>& scenario_names();

/// Strict `key = value` parser; `#` starts a comment. Fails with
/// ErrorCode::config on unknown or duplicate keys, bad values, range
/// violations (each naming its line) and missing required keys.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved configuration, one `key = value` per line, sorted.
std::string echo_config(const RunConfig& cfg);

/// Documentation of every key: name, default (or "required"/"unset"), meaning.
struct KeyDoc {
  std::string key, default_value, description;
};
std::vector<KeyDoc> config_keys();

}  // namespace electroflow::app
