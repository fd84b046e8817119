// electroflow run <config> [--output-dir D] [--overwrite]
// electroflow verify <config> [--output-dir D]
//
// Exit status: 0 all assertions pass, 1 an assertion failed or the run was
// aborted by a numerical error, 2 usage, config or I/O error.

#include <CLI11.hpp>

#include <cstdio>
#include <string>

#include "electroflow/electroflow.h"

namespace {

int exit_code_for(ef_status s) {
  switch (s) {
    case EF_OK: return 0;
    case EF_CONFIG:
    case EF_IO:
    case EF_INVALID_ARGUMENT: return 2;
    default: return 1;
  }
}

int report_error(ef_status s) {
  std::fprintf(stderr, "electroflow: %s: %s\n", ef_status_name(s), ef_last_error());
  return exit_code_for(s);
}

int print_report(ef_report* rep) {
  std::printf("claim: %s\n", ef_report_claim(rep));
  const size_t count = ef_report_assertion_count(rep);
  for (size_t i = 0; i < count; ++i) {
    const char* name = nullptr;
    const char* detail = nullptr;
    int passed = 0;
    double value = 0.0, threshold = 0.0;
    ef_report_assertion(rep, i, &name, &passed, &value, &threshold, &detail);
    std::printf("[%s] %s: value %.6g, threshold %.6g%s%s\n", passed ? "PASS" : "FAIL", name, value, threshold,
                detail && *detail ? "; " : "", detail ? detail : "");
  }
  const int ok = ef_report_passed(rep);
  std::printf("%s\n", ok ? "all assertions passed" : "assertion failure");
  ef_report_free(rep);
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral electroconvection simulator and verification harness"};
  app.require_subcommand(1);

  std::string config_path, output_dir;
  bool overwrite = false;
  auto* run = app.add_subcommand("run", "run a scenario and assess it");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--output-dir", output_dir, "override output_dir");
  run->add_flag("--overwrite", overwrite, "replace a non-empty output directory");

  auto* verify = app.add_subcommand("verify", "re-assess a finished output directory");
  verify->add_option("config", config_path, "config file")->required();
  verify->add_option("--output-dir", output_dir, "override output_dir");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  ef_config* cfg = nullptr;
  if (ef_status s = ef_config_load(config_path.c_str(), &cfg); s != EF_OK) return report_error(s);
  const char* dir = output_dir.empty() ? nullptr : output_dir.c_str();

  ef_report* rep = nullptr;
  const ef_status s = run->parsed() ? ef_run_scenario(cfg, dir, overwrite ? 1 : 0, &rep) : ef_verify_scenario(cfg, dir, &rep);
  ef_config_free(cfg);
  if (s != EF_OK) return report_error(s);
  return print_report(rep);
}
