#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "app/config.hpp"
#include "solver/state.hpp"

namespace electroflow::app {

struct Assertion {
  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct ScenarioReport {
  std::string scenario;
  std::string claim;  // the property of the model this scenario checks
  std::vector<Assertion> assertions;
  std::string measurements_json = "{}";

  bool passed() const;
  std::string to_json() const;
};

/// Simulates the configured scenario into cfg.output_dir (or `output_dir`
/// when non-empty), writes resolved.cfg, CSVs, snapshots and summary.json,
/// and returns the assessment. Fails with ErrorCode::io when the directory
/// is non-empty and `overwrite` is false.
ScenarioReport run_scenario(const RunConfig& cfg, const std::filesystem::path& output_dir = {},
                            bool overwrite = false);

/// Re-evaluates the assertions of a finished output directory from its files.
ScenarioReport assess_scenario(const RunConfig& cfg, const std::filesystem::path& output_dir = {});

solver::State make_initial(const RunConfig& cfg, const spectral::TorusGrid& grid, std::uint64_t seed,
                           double q_norm, double u_norm);

// Checks shared by scenarios and the acceptance suite.

struct LemmaCheck {
  double max_excess = 0.0;        // max over modes of |Lambda^s (Lambda^-1)_eps f| / |Lambda^{s-1} f| - 1
  double max_equality_error = 0.0;  // relative, eps = 0
  bool passed = false;
};
/// Coefficientwise |Lambda^s (Lambda^-1)_eps f| <= |Lambda^{s-1} f| over
/// `fields` random fields for each s and eps, with equality at eps = 0.
LemmaCheck inverse_lambda_eps_lemma(int n, int fields, std::uint64_t seed, const std::vector<double>& s_values,
                                    const std::vector<double>& eps_values);

struct MergeCheck {
  bool bounds_hold = false;
  double exponent = 0.0;
  int count = 0;
};
/// Exact lattice eigenvalues {|k|^alpha} and {|k|^2}, 0 < |k| <= radius,
/// merged with the optimal growth constants (beta = alpha/2 and 1).
MergeCheck lattice_merge_check(double alpha, double radius);

/// |tau_hat - tau| on the spectrum e^{-tau |k|^{alpha/2}} with fixed phases.
double gevrey_constructed_error(int n, double alpha, double tau);

}  // namespace electroflow::app
