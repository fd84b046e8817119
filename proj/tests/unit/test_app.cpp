#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "app/config.hpp"
#include "app/scenarios.hpp"
#include "common/error.hpp"

using namespace electroflow;
using namespace electroflow::app;
namespace fs = std::filesystem;

namespace {

const char* minimal = R"(scenario = decay
alpha = 1
n = 16
dt = 0.05
T = 1
)";

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::config);
    return e.what();
  }
  FAIL("expected a config error");
  return {};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("electroflow_app_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("minimal config resolves documented defaults") {
  const auto c = parse_config(minimal);
  CHECK(c.scenario == "decay");
  CHECK(c.solver.n == 16);
  CHECK(c.solver.scheme == solver::Scheme::ifrk2);
  CHECK(c.solver.epsilon == 0.0);
  CHECK(c.solver.cfl_limit == 0.5);
  CHECK(c.sample_every == 1);
  CHECK(c.output_dir == fs::path("out"));
  CHECK(c.initial.kind == "analytic");
  CHECK(c.forcing.empty());
  for (const auto& doc : config_keys())
    if (doc.default_value != "required" && doc.default_value != "unset" && !doc.default_value.empty())
      CHECK(c.has(doc.key));
}

TEST_CASE("range errors name the key, the bound and the line") {
  const auto msg = config_error("scenario = decay\nalpha = 1.5\nn = 16\ndt = 0.1\nT = 1\n");
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(msg.find("alpha") != std::string::npos);
  CHECK(msg.find("(0, 1]") != std::string::npos);
}

TEST_CASE("unknown, duplicate, missing and malformed keys are rejected") {
  CHECK(config_error(std::string(minimal) + "colour = red\n").find("line 6") != std::string::npos);
  CHECK(config_error(std::string(minimal) + "alpha = 0.5\n").find("alpha") != std::string::npos);
  CHECK(config_error("scenario = decay\nalpha = 1\nn = 16\nT = 1\n").find("dt") != std::string::npos);
  config_error("scenario = decay\nalpha = one\nn = 16\ndt = 0.1\nT = 1\n");
  config_error(std::string(minimal) + "just text\n");
  config_error(std::string(minimal) + "forcing.f_modes = 1 0 1 0 0 0\n");
}

TEST_CASE("unknown scenario lists the available ones") {
  const auto msg = config_error("scenario = swirl\nalpha = 1\nn = 16\ndt = 0.1\nT = 1\n");
  for (const auto& name : scenario_names()) CHECK(msg.find(name) != std::string::npos);
}

TEST_CASE("random data require a seed") {
  config_error(std::string(minimal) + "ic.kind = random\n");
  CHECK_NOTHROW(parse_config(std::string(minimal) + "ic.kind = random\nseed = 4\n"));
  CHECK_NOTHROW(parse_config(std::string(minimal) + "ic.kind = random\ndecay.seeds = 1, 2\n"));
}

TEST_CASE("echo is a parse fixpoint") {
  const std::string text = std::string(minimal) +
                           "# comment line\nscheme = IFRK4  # trailing comment\n"
                           "forcing.f_modes = 0 2 1 0 0 0; 1 1 0 0.5 0 -0.5\nforcing.phi_modes = 1 1 0.5 0\n"
                           "snapshot_times = 0.5, 1\nic.kind = random\nseed = 3\n";
  const auto a = parse_config(text);
  const auto b = parse_config(echo_config(a));
  CHECK(a == b);
  CHECK(echo_config(a) == echo_config(b));
  CHECK(b.forcing.f_modes.size() == 2);
  CHECK(b.solver.scheme == solver::Scheme::ifrk4);
}

TEST_CASE("decay scenario from analytic data") {
  const auto dir = scratch("decay");
  const auto cfg = parse_config(R"(scenario = decay
alpha = 1
n = 16
dt = 0.05
T = 20
sample_every = 4
decay.fit_start = 2
decay.fit_end = 10
decay.final_ratio = 1e-6
)");
  const auto rep = run_scenario(cfg, dir);
  CHECK(rep.passed());
  CHECK(!rep.claim.empty());
  const auto j = nlohmann::json::parse(slurp(dir / "summary.json"));
  CHECK(j["passed"] == true);
  CHECK(j["scenario"] == "decay");
  CHECK(fs::exists(dir / "resolved.cfg"));
  CHECK(parse_config(slurp(dir / "resolved.cfg")) == cfg);
  const auto again = assess_scenario(cfg, dir);
  REQUIRE(again.assertions.size() == rep.assertions.size());
  for (std::size_t i = 0; i < rep.assertions.size(); ++i) CHECK(again.assertions[i].value == rep.assertions[i].value);
  try {
    run_scenario(cfg, dir);
    FAIL("expected io error on a non-empty directory");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::io);
  }
  fs::remove_all(dir);
}

TEST_CASE("identical configs give byte-identical CSV") {
  const auto a = scratch("repeat_a"), b = scratch("repeat_b");
  const auto cfg = parse_config(R"(scenario = lp_decay
alpha = 0.5
n = 16
dt = 0.02
T = 0.4
ic.kind = random
seed = 5
)");
  run_scenario(cfg, a);
  run_scenario(cfg, b);
  CHECK(slurp(a / "run_0.csv") == slurp(b / "run_0.csv"));
  CHECK(!slurp(a / "run_0.csv").empty());
  fs::remove_all(a);
  fs::remove_all(b);
}

TEST_CASE("galerkin ladder errors decrease") {
  const auto dir = scratch("galerkin");
  const auto cfg = parse_config(R"(scenario = galerkin
alpha = 1
n = 32
dt = 0.01
T = 0.5
galerkin.ladder = 4, 16, 64
)");
  const auto rep = run_scenario(cfg, dir);
  CHECK(rep.passed());
  fs::remove_all(dir);
}

TEST_CASE("snapshot times produce EFSNAP1 files") {
  const auto dir = scratch("snapshots");
  const auto cfg = parse_config(R"(scenario = lp_decay
alpha = 1
n = 16
dt = 0.05
T = 0.5
snapshot_times = 0.25, 0.5
)");
  run_scenario(cfg, dir);
  std::size_t count = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.path().extension() == ".efsnap") {
      ++count;
      CHECK(slurp(e.path()).rfind("EFSNAP1 16 ", 0) == 0);
    }
  CHECK(count == 6);
  fs::remove_all(dir);
}

TEST_CASE("shared checks") {
  const auto lemma = inverse_lambda_eps_lemma(32, 5, 1, {0.0, 0.5, 1.0, 1.5}, {0.0, 1e-3, 1e-1});
  CHECK(lemma.passed);
  CHECK(lemma.max_equality_error < 1e-14);
  const auto merge = lattice_merge_check(1.0, 32.0);
  CHECK(merge.bounds_hold);
  CHECK(merge.exponent > 1.4);
  CHECK(merge.exponent < 1.65);
  CHECK(gevrey_constructed_error(64, 1.0, 1.5) < 1e-10);
}
