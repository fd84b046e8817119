#include "electroflow/electroflow.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "app/config.hpp"
#include "app/scenarios.hpp"
#include "common/error.hpp"
#include "diagnostics/norms.hpp"
#include "solver/run.hpp"
#include "solver/solver.hpp"

using namespace electroflow;

struct ef_config {
  app::RunConfig cfg;
  std::string echo;
  std::string output_dir;
};

struct ef_report {
  app::ScenarioReport report;
  std::string json;
};

struct ef_solver {
  std::unique_ptr<solver::Solver> solver;
};

struct ef_state {
  solver::State state;
};

namespace {

thread_local std::string last_error;

template <class Fn>
ef_status guard(Fn fn) {
  try {
    fn();
    last_error.clear();
    return EF_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<ef_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return EF_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return EF_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) fail(ErrorCode::invalid_argument, std::string(what) + " is NULL");
}

spectral::SpectralField& component(solver::State& s, ef_component c) {
  switch (c) {
    case EF_Q: return s.q;
    case EF_U1: return s.u[0];
    case EF_U2: return s.u[1];
  }
  fail(ErrorCode::invalid_argument, "unknown component");
}

ef_config* wrap(app::RunConfig cfg) {
  auto* out = new ef_config{std::move(cfg), {}, {}};
  out->echo = app::echo_config(out->cfg);
  out->output_dir = out->cfg.output_dir.string();
  return out;
}

}  // namespace

extern "C" {

const char* ef_version(void) { return "1.0.0"; }

const char* ef_status_name(ef_status status) { return error_code_name(static_cast<ErrorCode>(status)); }

const char* ef_last_error(void) { return last_error.c_str(); }

ef_status ef_config_parse(const char* text, ef_config** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = wrap(app::parse_config(text));
  });
}

ef_status ef_config_load(const char* path, ef_config** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = wrap(app::load_config(path));
  });
}

void ef_config_free(ef_config* cfg) { delete cfg; }

const char* ef_config_scenario(const ef_config* cfg) { return cfg ? cfg->cfg.scenario.c_str() : ""; }

const char* ef_config_output_dir(const ef_config* cfg) { return cfg ? cfg->output_dir.c_str() : ""; }

const char* ef_config_echo(const ef_config* cfg) { return cfg ? cfg->echo.c_str() : ""; }

ef_status ef_run_scenario(const ef_config* cfg, const char* output_dir, int overwrite, ef_report** out) {
  return guard([&] {
    require(cfg, "cfg");
    require(out, "out");
    auto rep = app::run_scenario(cfg->cfg, output_dir ? output_dir : "", overwrite != 0);
    *out = new ef_report{rep, rep.to_json()};
  });
}

ef_status ef_verify_scenario(const ef_config* cfg, const char* output_dir, ef_report** out) {
  return guard([&] {
    require(cfg, "cfg");
    require(out, "out");
    auto rep = app::assess_scenario(cfg->cfg, output_dir ? output_dir : "");
    *out = new ef_report{rep, rep.to_json()};
  });
}

void ef_report_free(ef_report* report) { delete report; }

int ef_report_passed(const ef_report* report) { return report && report->report.passed() ? 1 : 0; }

const char* ef_report_claim(const ef_report* report) { return report ? report->report.claim.c_str() : ""; }

const char* ef_report_json(const ef_report* report) { return report ? report->json.c_str() : ""; }

size_t ef_report_assertion_count(const ef_report* report) { return report ? report->report.assertions.size() : 0; }

ef_status ef_report_assertion(const ef_report* report, size_t index, const char** name, int* passed, double* value,
                              double* threshold, const char** detail) {
  return guard([&] {
    require(report, "report");
    if (index >= report->report.assertions.size()) fail(ErrorCode::invalid_argument, "assertion index out of range");
    const auto& a = report->report.assertions[index];
    if (name) *name = a.name.c_str();
    if (passed) *passed = a.passed ? 1 : 0;
    if (value) *value = a.value;
    if (threshold) *threshold = a.threshold;
    if (detail) *detail = a.detail.c_str();
  });
}

ef_status ef_solver_create(int n, double alpha, double dt, int scheme, double epsilon, ef_solver** out) {
  return guard([&] {
    require(out, "out");
    if (scheme != 2 && scheme != 4) fail(ErrorCode::invalid_argument, "scheme must be 2 or 4");
    solver::SolverConfig c;
    c.n = n;
    c.alpha = alpha;
    c.dt = dt;
    c.scheme = scheme == 4 ? solver::Scheme::ifrk4 : solver::Scheme::ifrk2;
    c.epsilon = epsilon;
    *out = new ef_solver{std::make_unique<solver::Solver>(c)};
  });
}

ef_status ef_solver_from_config(const ef_config* cfg, ef_solver** out) {
  return guard([&] {
    require(cfg, "cfg");
    require(out, "out");
    *out = new ef_solver{std::make_unique<solver::Solver>(cfg->cfg.solver, cfg->cfg.forcing)};
  });
}

void ef_solver_free(ef_solver* solver) { delete solver; }

ef_status ef_solver_step(ef_solver* s, ef_state* state, int steps) {
  return guard([&] {
    require(s, "solver");
    require(state, "state");
    if (steps < 0) fail(ErrorCode::invalid_argument, "steps must be >= 0");
    if (!(state->state.grid() == s->solver->grid())) fail(ErrorCode::dimension_mismatch, "state grid differs from solver grid");
    solver::State work = state->state;
    for (int k = 0; k < steps; ++k) s->solver->advance(work);
    state->state = std::move(work);
  });
}

ef_status ef_state_create(int n, ef_state** out) {
  return guard([&] {
    require(out, "out");
    *out = new ef_state{solver::State(spectral::TorusGrid(n))};
  });
}

ef_status ef_state_from_config(const ef_config* cfg, ef_state** out) {
  return guard([&] {
    require(cfg, "cfg");
    require(out, "out");
    const spectral::TorusGrid grid(cfg->cfg.solver.n);
    *out = new ef_state{app::make_initial(cfg->cfg, grid, cfg->cfg.solver.seed, cfg->cfg.initial.q_norm,
                                          cfg->cfg.initial.u_norm)};
  });
}

void ef_state_free(ef_state* state) { delete state; }

double ef_state_time(const ef_state* state) { return state ? state->state.t : std::nan(""); }

ef_status ef_state_set_mode(ef_state* state, ef_component c, int kx, int ky, double re, double im) {
  return guard([&] {
    require(state, "state");
    if (!state->state.grid().contains(kx, ky)) fail(ErrorCode::invalid_argument, "wavenumber outside the grid");
    if (kx == 0 && ky == 0) fail(ErrorCode::invalid_argument, "k = 0 is held at zero (mean-zero fields)");
    component(state->state, c).set_pair(kx, ky, {re, im});
  });
}

ef_status ef_state_get_mode(const ef_state* state, ef_component c, int kx, int ky, double* re, double* im) {
  return guard([&] {
    require(state, "state");
    if (!state->state.grid().contains(kx, ky)) fail(ErrorCode::invalid_argument, "wavenumber outside the grid");
    const auto v = component(const_cast<solver::State&>(state->state), c).at(kx, ky);
    if (re) *re = v.real();
    if (im) *im = v.imag();
  });
}

ef_status ef_state_norms(const ef_state* state, double alpha, ef_norms* out) {
  return guard([&] {
    require(state, "state");
    require(out, "out");
    diagnostics::RecordBuilder build(alpha, 0.0);
    const auto r = build(state->state);
    *out = {r.t, r.l2_q, r.l4_q, r.l8_q, r.h1_q, r.halpha2_q, r.l2_u, r.h1_u, r.h2_u, r.gevrey_tau_hat};
  });
}

ef_status ef_state_write_snapshots(const ef_state* state, double alpha, const char* dir, const char* stem) {
  return guard([&] {
    require(state, "state");
    require(dir, "dir");
    require(stem, "stem");
    solver::write_state_snapshots(state->state, alpha, dir, stem);
  });
}

}  // extern "C"
