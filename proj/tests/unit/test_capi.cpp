#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "electroflow/electroflow.h"

namespace {

const char* decay_cfg = R"(scenario = decay
alpha = 1
n = 16
dt = 0.05
T = 20
sample_every = 4
decay.fit_start = 2
decay.fit_end = 10
decay.final_ratio = 1e-6
)";

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(ef_status_name(EF_OK)) == "ok");
  CHECK(std::string(ef_status_name(EF_CFL_VIOLATION)) == "cfl_violation");
  CHECK(std::strlen(ef_version()) > 0);
}

TEST_CASE("config handles") {
  ef_config* cfg = nullptr;
  REQUIRE(ef_config_parse(decay_cfg, &cfg) == EF_OK);
  CHECK(std::string(ef_config_scenario(cfg)) == "decay");
  CHECK(std::string(ef_config_output_dir(cfg)) == "out");
  CHECK(std::string(ef_config_echo(cfg)).find("alpha = 1") != std::string::npos);
  ef_config_free(cfg);

  ef_config* bad = nullptr;
  CHECK(ef_config_parse("scenario = decay\nalpha = 2\n", &bad) == EF_CONFIG);
  CHECK(bad == nullptr);
  CHECK(std::string(ef_last_error()).find("alpha") != std::string::npos);
  CHECK(ef_config_load("/nonexistent/electroflow.cfg", &bad) == EF_CONFIG);
  CHECK(ef_config_parse(nullptr, &bad) == EF_INVALID_ARGUMENT);
  ef_config_free(nullptr);
}

TEST_CASE("run and verify a scenario through the C API") {
  const auto dir = std::filesystem::temp_directory_path() / "electroflow_capi_run";
  std::filesystem::remove_all(dir);
  ef_config* cfg = nullptr;
  REQUIRE(ef_config_parse(decay_cfg, &cfg) == EF_OK);
  ef_report* rep = nullptr;
  REQUIRE(ef_run_scenario(cfg, dir.c_str(), 0, &rep) == EF_OK);
  CHECK(ef_report_passed(rep) == 1);
  CHECK(std::strlen(ef_report_claim(rep)) > 0);
  const size_t count = ef_report_assertion_count(rep);
  CHECK(count > 0);
  const char* name = nullptr;
  int passed = -1;
  CHECK(ef_report_assertion(rep, 0, &name, &passed, nullptr, nullptr, nullptr) == EF_OK);
  CHECK(passed == 1);
  CHECK(std::strlen(name) > 0);
  CHECK(ef_report_assertion(rep, count, &name, nullptr, nullptr, nullptr, nullptr) == EF_INVALID_ARGUMENT);
  CHECK(std::string(ef_report_json(rep)).find("\"passed\"") != std::string::npos);
  ef_report_free(rep);

  ef_report* again = nullptr;
  CHECK(ef_run_scenario(cfg, dir.c_str(), 0, &again) == EF_IO);
  REQUIRE(ef_verify_scenario(cfg, dir.c_str(), &again) == EF_OK);
  CHECK(ef_report_passed(again) == 1);
  ef_report_free(again);
  ef_config_free(cfg);
  std::filesystem::remove_all(dir);
}

TEST_CASE("solver and state handles reproduce exact linear decay") {
  ef_solver* sol = nullptr;
  REQUIRE(ef_solver_create(32, 1.0, 0.1, 4, 0.0, &sol) == EF_OK);
  ef_state* st = nullptr;
  REQUIRE(ef_state_create(32, &st) == EF_OK);
  REQUIRE(ef_state_set_mode(st, EF_Q, 3, 4, 0.5, 0.0) == EF_OK);
  REQUIRE(ef_solver_step(sol, st, 5) == EF_OK);
  CHECK(ef_state_time(st) == doctest::Approx(0.5));
  double re = 0.0, im = 1.0;
  REQUIRE(ef_state_get_mode(st, EF_Q, -3, -4, &re, &im) == EF_OK);
  CHECK(re == doctest::Approx(0.5 * std::exp(-2.5)).epsilon(1e-14));
  CHECK(im == 0.0);
  ef_norms norms{};
  REQUIRE(ef_state_norms(st, 1.0, &norms) == EF_OK);
  CHECK(norms.h1_q == doctest::Approx(5.0 * norms.l2_q).epsilon(1e-14));
  CHECK(norms.l2_u < 1e-15);
  CHECK(ef_state_get_mode(st, EF_U1, 40, 0, &re, &im) == EF_INVALID_ARGUMENT);
  ef_state_free(st);
  ef_solver_free(sol);

  CHECK(ef_solver_create(32, 1.0, 0.1, 3, 0.0, &sol) == EF_INVALID_ARGUMENT);
  CHECK(ef_solver_create(32, 1.5, 0.1, 2, 0.0, &sol) == EF_INVALID_ARGUMENT);
}

TEST_CASE("mismatched grids and CFL violations surface as status codes") {
  ef_solver* sol = nullptr;
  ef_state* st = nullptr;
  REQUIRE(ef_solver_create(16, 1.0, 0.5, 2, 0.0, &sol) == EF_OK);
  REQUIRE(ef_state_create(32, &st) == EF_OK);
  CHECK(ef_solver_step(sol, st, 1) == EF_DIMENSION_MISMATCH);
  ef_state_free(st);
  REQUIRE(ef_state_create(16, &st) == EF_OK);
  REQUIRE(ef_state_set_mode(st, EF_U2, 1, 0, 5.0, 0.0) == EF_OK);
  CHECK(ef_solver_step(sol, st, 1) == EF_CFL_VIOLATION);
  CHECK(std::strlen(ef_last_error()) > 0);
  ef_state_free(st);
  ef_solver_free(sol);
}

TEST_CASE("state from config and snapshots") {
  ef_config* cfg = nullptr;
  REQUIRE(ef_config_parse("scenario = decay\nalpha = 1\nn = 16\ndt = 0.1\nT = 1\nic.kind = random\nseed = 2\n", &cfg) ==
          EF_OK);
  ef_state* st = nullptr;
  REQUIRE(ef_state_from_config(cfg, &st) == EF_OK);
  ef_norms norms{};
  REQUIRE(ef_state_norms(st, 1.0, &norms) == EF_OK);
  CHECK(norms.l2_q == doctest::Approx(1.0).epsilon(1e-13));
  ef_solver* sol = nullptr;
  REQUIRE(ef_solver_from_config(cfg, &sol) == EF_OK);
  CHECK(ef_solver_step(sol, st, 2) == EF_OK);
  const auto dir = std::filesystem::temp_directory_path() / "electroflow_capi_snap";
  std::filesystem::remove_all(dir);
  CHECK(ef_state_write_snapshots(st, 1.0, dir.c_str(), "s") == EF_OK);
  CHECK(std::filesystem::exists(dir / "s_q.efsnap"));
  CHECK(std::filesystem::exists(dir / "s_u2.efsnap"));
  std::filesystem::remove_all(dir);
  ef_solver_free(sol);
  ef_state_free(st);
  ef_config_free(cfg);
}
