#include "app/scenarios.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <numbers>
#include <random>
#include <sstream>

#include "common/error.hpp"
#include "diagnostics/absorbing.hpp"
#include "diagnostics/csv.hpp"
#include "diagnostics/eigen_merge.hpp"
#include "diagnostics/fits.hpp"
#include "diagnostics/gevrey.hpp"
#include "diagnostics/norms.hpp"
#include "diagnostics/trace.hpp"
#include "operators/periodic.hpp"
#include "solver/initial.hpp"
#include "solver/run.hpp"
#include "solver/tangent.hpp"

namespace electroflow::app {

namespace fs = std::filesystem;
using json = nlohmann::json;
using diagnostics::DiagnosticsRecord;
using solver::State;

namespace {

// ---------------------------------------------------------------- tables

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::vector<double> column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) fail(ErrorCode::io, "table has no column '" + name + "'");
    const auto j = static_cast<std::size_t>(it - header.begin());
    std::vector<double> out;
    for (const auto& r : rows) out.push_back(r.at(j));
    return out;
  }
};

void write_table(const fs::path& path, const Table& t) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::io, "cannot write " + path.string());
  for (std::size_t j = 0; j < t.header.size(); ++j) out << (j ? "," : "") << t.header[j];
  out << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t j = 0; j < r.size(); ++j) out << (j ? "," : "") << diagnostics::format_double(r[j]);
    out << '\n';
  }
}

Table read_table(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::io, "cannot read " + path.string());
  Table t;
  std::string line, cell;
  if (!std::getline(in, line)) fail(ErrorCode::io, path.string() + ": empty file");
  std::istringstream h(line);
  while (std::getline(h, cell, ',')) t.header.push_back(cell);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream r(line);
    std::vector<double> row;
    while (std::getline(r, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != t.header.size()) fail(ErrorCode::io, path.string() + ": ragged row");
    t.rows.push_back(std::move(row));
  }
  return t;
}

template <class T>
std::vector<T> column(const std::vector<DiagnosticsRecord>& recs, double DiagnosticsRecord::*member) {
  std::vector<T> out;
  for (const auto& r : recs) out.push_back(r.*member);
  return out;
}

// ---------------------------------------------------------------- helpers

template <class Fn>
auto parallel_map(std::size_t count, Fn fn) {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::future<R>> futures;
  for (std::size_t i = 0; i < count; ++i) futures.push_back(std::async(std::launch::async, fn, i));
  std::vector<R> out;
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

std::string run_name(std::size_t i) { return "run_" + std::to_string(i); }

double h_norm(const solver::FieldPair& x) { return solver::norm(x); }

solver::RunOptions options(const RunConfig& cfg, const fs::path& dir, const std::string& tag) {
  solver::RunOptions o;
  o.final_time = cfg.final_time;
  o.sample_every = cfg.sample_every;
  o.snapshot_times = cfg.snapshot_times;
  if (!cfg.snapshot_times.empty()) o.snapshot_dir = dir / ("snapshots_" + tag);
  return o;
}

Assertion check_le(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value <= threshold, value, threshold, std::move(detail)};
}

Assertion check_ge(std::string name, double value, double threshold, std::string detail = {}) {
  return {std::move(name), value >= threshold, value, threshold, std::move(detail)};
}

Assertion check_true(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, ok ? 1.0 : 0.0, 1.0, std::move(detail)};
}

std::string fmt(double v) { return diagnostics::format_double(v); }

std::vector<std::uint64_t> decay_seeds(const RunConfig& cfg) {
  if (cfg.has("decay.seeds")) {
    std::vector<std::uint64_t> out;
    for (auto s : cfg.integers("decay.seeds")) out.push_back(static_cast<std::uint64_t>(s));
    if (!out.empty()) return out;
  }
  return {cfg.solver.seed};
}

double strictly_decreasing_margin(const std::vector<double>& v) {
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < v.size(); ++i) worst = std::min(worst, v[i - 1] - v[i]);
  return worst;
}

// ---------------------------------------------------------------- claims

std::string claim_of(const std::string& scenario) {
  if (scenario == "decay") return "unforced system: exponential decay of |Lambda q|^2, |A^{1/2}u|^2, |Lambda^2 q|^2, |Au|^2";
  if (scenario == "lp_decay") return "unforced system: L^p maximum principle, |q(t)|_{L^p} nonincreasing for p = 2, 4, 8";
  if (scenario == "absorbing_ball") return "forced system: absorbing ball for |Lambda q| + |Au| with radius set by the forcing";
  if (scenario == "lipschitz") return "Lipschitz continuity of the solution map in H with an exponential constant";
  if (scenario == "gevrey") return "Gevrey regularity: radius of analyticity grows from analytic data";
  if (scenario == "eps_convergence") return "regularized system: (Lambda^-1)_eps bound and convergence as eps -> 0";
  if (scenario == "galerkin") return "Galerkin approximations converge to the full solution";
  if (scenario == "volume_trace") return "volume elements: trace growth N^{1+alpha/2} and merged eigenvalue bound";
  return scenario;
}

// ---------------------------------------------------------------- simulate

void simulate_decay(const RunConfig& cfg, const fs::path& dir) {
  const auto seeds = decay_seeds(cfg);
  const spectral::TorusGrid grid(cfg.solver.n);
  parallel_map(seeds.size(), [&](std::size_t i) {
    const State init = make_initial(cfg, grid, seeds[i], cfg.initial.q_norm, cfg.initial.u_norm);
    Table higher{{"t", "h2_q"}, {}};
    auto opts = options(cfg, dir, run_name(i));
    opts.observer = [&](const State& s) { higher.rows.push_back({s.t, diagnostics::sobolev_norm(s.q, 2.0)}); };
    const auto res = solver::run(init, cfg.forcing, cfg.solver, opts);
    diagnostics::write_csv(dir / (run_name(i) + ".csv"), res.records);
    write_table(dir / (run_name(i) + "_higher.csv"), higher);
    return 0;
  });
}

void simulate_single(const RunConfig& cfg, const fs::path& dir) {
  const spectral::TorusGrid grid(cfg.solver.n);
  const State init = make_initial(cfg, grid, cfg.solver.seed, cfg.initial.q_norm, cfg.initial.u_norm);
  const auto res = solver::run(init, cfg.forcing, cfg.solver, options(cfg, dir, run_name(0)));
  diagnostics::write_csv(dir / (run_name(0) + ".csv"), res.records);
}

void simulate_absorbing(const RunConfig& cfg, const fs::path& dir) {
  const auto sizes = cfg.reals("ball.sizes");
  const spectral::TorusGrid grid(cfg.solver.n);
  Table meta{{"run", "initial_size"}, {}};
  const auto measured = parallel_map(sizes.size(), [&](std::size_t i) {
    const double part = sizes[i] / std::sqrt(2.0);
    State init = make_initial(cfg, grid, cfg.solver.seed + i, part, part);
    const double size = h_norm(init);
    const auto res = solver::run(init, cfg.forcing, cfg.solver, options(cfg, dir, run_name(i)));
    diagnostics::write_csv(dir / (run_name(i) + ".csv"), res.records);
    return size;
  });
  for (std::size_t i = 0; i < sizes.size(); ++i) meta.rows.push_back({static_cast<double>(i), measured[i]});
  write_table(dir / "ensemble.csv", meta);
}

State perturbation(const RunConfig& cfg, const spectral::TorusGrid& grid, double h) {
  State d = solver::random_state(grid, cfg.initial.slope, cfg.solver.seed + 7919, 1.0, 1.0);
  d *= h / h_norm(d);
  return d;
}

void simulate_lipschitz(const RunConfig& cfg, const fs::path& dir) {
  const auto hs = cfg.reals("lipschitz.h");
  const spectral::TorusGrid grid(cfg.solver.n);
  const State base = make_initial(cfg, grid, cfg.solver.seed, cfg.initial.q_norm, cfg.initial.u_norm);
  auto trajectory = [&](const State& init) {
    std::vector<State> states;
    auto opts = options(cfg, dir, "unused");
    opts.snapshot_dir.clear();
    opts.gevrey = false;
    opts.observer = [&](const State& s) { states.push_back(s); };
    solver::run(init, cfg.forcing, cfg.solver, opts);
    return states;
  };
  const auto reference = trajectory(base);
  const auto perturbed = parallel_map(hs.size(), [&](std::size_t i) {
    State init = base;
    init += perturbation(cfg, grid, hs[i]);
    return trajectory(init);
  });
  Table t{{"t"}, {}};
  for (std::size_t i = 0; i < hs.size(); ++i) t.header.push_back("ratio_" + std::to_string(i));
  for (std::size_t s = 0; s < reference.size(); ++s) {
    std::vector<double> row{reference[s].t};
    for (std::size_t i = 0; i < hs.size(); ++i) {
      solver::FieldPair diff = perturbed[i][s];
      diff -= reference[s];
      row.push_back(h_norm(diff) / hs[i]);
    }
    t.rows.push_back(std::move(row));
  }
  write_table(dir / "lipschitz.csv", t);
}

void simulate_gevrey(const RunConfig& cfg, const fs::path& dir) {
  const auto times = cfg.reals("gevrey.times");
  const spectral::TorusGrid grid(cfg.solver.n);
  State s = make_initial(cfg, grid, cfg.solver.seed, cfg.initial.q_norm, cfg.initial.u_norm);
  solver::Solver sol(cfg.solver, cfg.forcing);
  Table t{{"t", "tau_hat"}, {}};
  std::vector<double> targets = times;
  std::sort(targets.begin(), targets.end());
  const double t0 = s.t;
  long long k = 0;
  for (double target : targets) {
    const long long steps = std::llround((target - t0) / cfg.solver.dt);
    while (k < steps) {
      sol.advance(s);
      s.t = t0 + static_cast<double>(++k) * cfg.solver.dt;
    }
    double tau = std::numeric_limits<double>::quiet_NaN();
    try {
      tau = diagnostics::gevrey_radius_fit(s.q, cfg.solver.alpha);
    } catch (const Error&) {
    }
    t.rows.push_back({s.t, tau});
    char stem[32];
    std::snprintf(stem, sizeof stem, "gevrey_%06lld", k);
    solver::write_state_snapshots(s, cfg.solver.alpha, dir / "snapshots", stem);
  }
  write_table(dir / "gevrey.csv", t);
}

State final_state(const RunConfig& cfg, const State& init, const solver::SolverConfig& scfg) {
  solver::RunOptions o;
  o.final_time = cfg.final_time;
  o.sample_every = std::max(1, static_cast<int>(std::llround(cfg.final_time / scfg.dt)));
  o.gevrey = false;
  return solver::run(init, cfg.forcing, scfg, o).final_state;
}

void simulate_eps(const RunConfig& cfg, const fs::path& dir) {
  const auto ladder = cfg.reals("eps.ladder");
  const spectral::TorusGrid grid(cfg.solver.n);
  const State init = make_initial(cfg, grid, cfg.solver.seed, cfg.initial.q_norm, cfg.initial.u_norm);
  auto reference_cfg = cfg.solver;
  reference_cfg.epsilon = 0.0;
  const State ref = final_state(cfg, init, reference_cfg);
  const auto errors = parallel_map(ladder.size(), [&](std::size_t i) {
    auto c = cfg.solver;
    c.epsilon = ladder[i];
    State fin = final_state(cfg, init, c);
    return diagnostics::lp_norm(fin.q - ref.q, 2);
  });
  Table t{{"epsilon", "error"}, {}};
  for (std::size_t i = 0; i < ladder.size(); ++i) t.rows.push_back({ladder[i], errors[i]});
  write_table(dir / "eps.csv", t);
}

void simulate_galerkin(const RunConfig& cfg, const fs::path& dir) {
  const auto ladder = cfg.integers("galerkin.ladder");
  const spectral::TorusGrid grid(cfg.solver.n);
  const State init = make_initial(cfg, grid, cfg.solver.seed, cfg.initial.q_norm, cfg.initial.u_norm);
  auto reference_cfg = cfg.solver;
  reference_cfg.galerkin_n.reset();
  const State ref = final_state(cfg, init, reference_cfg);
  const auto errors = parallel_map(ladder.size(), [&](std::size_t i) {
    auto c = cfg.solver;
    c.galerkin_n = static_cast<int>(ladder[i]);
    State fin = final_state(cfg, init, c);
    return diagnostics::lp_norm(fin.q - ref.q, 2);
  });
  Table t{{"galerkin_n", "error"}, {}};
  for (std::size_t i = 0; i < ladder.size(); ++i) t.rows.push_back({static_cast<double>(ladder[i]), errors[i]});
  write_table(dir / "galerkin.csv", t);
}

solver::TangentState random_frame(const spectral::TorusGrid& grid, int count, std::uint64_t seed) {
  solver::TangentState frame;
  for (int i = 0; i < count; ++i) {
    State v = solver::random_state(grid, 1.0, seed + 104729 * (i + 1), 1.0, 1.0);
    frame.vectors.push_back(static_cast<solver::FieldPair>(v));
  }
  return frame;
}

void simulate_trace(const RunConfig& cfg, const fs::path& dir) {
  const auto ns = cfg.integers("trace.N");
  const int nmax = static_cast<int>(*std::max_element(ns.begin(), ns.end()));
  const spectral::TorusGrid grid(cfg.solver.n);
  State s = make_initial(cfg, grid, cfg.solver.seed, cfg.initial.q_norm, cfg.initial.u_norm);
  solver::Solver sol(cfg.solver, cfg.forcing);
  const double dt = cfg.solver.dt;
  const long long spin = std::llround(cfg.real("trace.spinup") / dt);
  const double t0 = s.t;
  for (long long k = 1; k <= spin; ++k) {
    sol.advance(s);
    s.t = t0 + static_cast<double>(k) * dt;
  }
  auto frame = cfg.text("trace.frame") == "modes" ? solver::mode_frame(grid, nmax)
                                                   : random_frame(grid, nmax, cfg.solver.seed);
  const auto steps = static_cast<int>(std::llround(cfg.final_time / dt) - spin);
  if (steps <= 0) fail(ErrorCode::config, "volume_trace: T must exceed trace.spinup");
  const auto series =
      diagnostics::trace_series(sol, s, frame, steps, static_cast<int>(cfg.integer("trace.sample_every")));
  Table t{{"t"}, {}};
  for (auto n : ns) t.header.push_back("trace_" + std::to_string(n));
  for (std::size_t k = 0; k < series.t.size(); ++k) {
    std::vector<double> row{series.t[k]};
    for (auto n : ns) row.push_back(series.partial[k][static_cast<std::size_t>(n - 1)]);
    t.rows.push_back(std::move(row));
  }
  write_table(dir / "trace.csv", t);
}

// ---------------------------------------------------------------- assess

void assess_decay(const RunConfig& cfg, const fs::path& dir, ScenarioReport& rep, json& m) {
  const auto seeds = decay_seeds(cfg);
  const double ta = cfg.real("decay.fit_start"), tb = cfg.real("decay.fit_end");
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    const auto recs = diagnostics::read_csv(dir / (run_name(i) + ".csv"));
    const auto higher = read_table(dir / (run_name(i) + "_higher.csv"));
    const auto t = column<double>(recs, &DiagnosticsRecord::t);
    auto squared = [](std::vector<double> v) {
      for (auto& x : v) x *= x;
      return v;
    };
    const std::pair<std::string, std::vector<double>> series[] = {
        {"|Lambda q|^2", squared(column<double>(recs, &DiagnosticsRecord::h1_q))},
        {"|A^{1/2} u|^2", squared(column<double>(recs, &DiagnosticsRecord::h1_u))},
        {"|Lambda^2 q|^2", squared(higher.column("h2_q"))},
        {"|A u|^2", squared(column<double>(recs, &DiagnosticsRecord::h2_u))},
    };
    json runs;
    for (const auto& [name, y] : series) {
      const auto fit = diagnostics::decay_rate_fit(t, y, ta, tb);
      const std::string label = run_name(i) + " (seed " + std::to_string(seeds[i]) + "): " + name;
      rep.assertions.push_back({label + " decays with r2 > 0.99", fit.rate > 0.0 && fit.r2 > 0.99, fit.rate, 0.0,
                                "rate " + fmt(fit.rate) + ", r2 " + fmt(fit.r2)});
      runs[name] = {{"rate", fit.rate}, {"r2", fit.r2}, {"samples", fit.samples}};
    }
    if (cfg.has("decay.final_ratio")) {
      const double w0 = std::hypot(recs.front().l2_q, recs.front().l2_u);
      const double w1 = std::hypot(recs.back().l2_q, recs.back().l2_u);
      rep.assertions.push_back(check_le(run_name(i) + ": |w(T)|_H / |w(0)|_H", w1 / w0, cfg.real("decay.final_ratio")));
    }
    m[run_name(i)] = runs;
  }
}

void assess_lp(const RunConfig& cfg, const fs::path& dir, ScenarioReport& rep, json& m) {
  const auto recs = diagnostics::read_csv(dir / (run_name(0) + ".csv"));
  const double tol = cfg.real("lp.tolerance");
  const std::pair<int, double DiagnosticsRecord::*> norms[] = {
      {2, &DiagnosticsRecord::l2_q}, {4, &DiagnosticsRecord::l4_q}, {8, &DiagnosticsRecord::l8_q}};
  for (const auto& [p, member] : norms) {
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < recs.size(); ++i) {
      const double prev = recs[i - 1].*member;
      if (prev > 0.0) worst = std::max(worst, (recs[i].*member - prev) / prev);
    }
    rep.assertions.push_back(check_le("|q|_{L^" + std::to_string(p) + "} max relative growth per sample", worst, tol));
    m["max_relative_growth_L" + std::to_string(p)] = worst;
  }
}

void assess_absorbing(const RunConfig& cfg, const fs::path& dir, ScenarioReport& rep, json& m) {
  const auto meta = read_table(dir / "ensemble.csv");
  const auto sizes = meta.column("initial_size");
  std::vector<diagnostics::BallRun> runs;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto recs = diagnostics::read_csv(dir / (run_name(i) + ".csv"));
    diagnostics::BallRun r;
    r.initial_size = sizes[i];
    for (const auto& x : recs) {
      r.t.push_back(x.t);
      r.y.push_back(x.h1_q + x.h2_u);
    }
    runs.push_back(std::move(r));
  }
  const double start = cfg.has("ball.window_start") ? cfg.real("ball.window_start") : 0.75 * cfg.final_time;
  const auto b = diagnostics::absorbing_ball_check(runs, start, cfg.final_time);
  rep.assertions.push_back(check_le("band ratio max/min across ensemble", b.band_ratio, cfg.real("ball.band_factor")));
  std::string entries;
  for (double e : b.entry_time) entries += (entries.empty() ? "" : ", ") + fmt(e);
  rep.assertions.push_back(check_true("entry times increase with initial size", b.entry_ordered, "entry times " + entries));
  for (std::size_t i = 0; i < runs.size(); ++i) {
    rep.assertions.push_back(check_true(run_name(i) + " stays within 1.1 rho_hat after entry", b.persists[i]));
  }
  m["rho_hat"] = b.rho_hat;
  m["band"] = b.band;
  m["entry_time"] = b.entry_time;
  m["initial_size"] = sizes;
}

void assess_lipschitz(const RunConfig& cfg, const fs::path& dir, ScenarioReport& rep, json& m) {
  const auto t = read_table(dir / "lipschitz.csv");
  const auto hs = cfg.reals("lipschitz.h");
  const auto time = t.column("t");
  std::vector<double> envelope(time.size(), 0.0);
  double spread = 0.0;
  const auto first = t.column("ratio_0");
  for (std::size_t i = 0; i < hs.size(); ++i) {
    const auto r = t.column("ratio_" + std::to_string(i));
    for (std::size_t k = 0; k < r.size(); ++k) {
      envelope[k] = std::max(envelope[k], r[k]);
      spread = std::max(spread, std::abs(std::log(r[k] / first[k])));
    }
  }
  std::vector<double> logs;
  for (double e : envelope) logs.push_back(std::log(e));
  const auto fit = diagnostics::fit_line(time, logs);
  double a = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < time.size(); ++k) a = std::max(a, logs[k] - fit.slope * time[k]);
  rep.assertions.push_back(check_true("single exponential e^{a+bt} bounds |dw(t)|_H / h for all h",
                                      std::isfinite(a) && std::isfinite(fit.slope),
                                      "a = " + fmt(a) + ", b = " + fmt(fit.slope)));
  rep.assertions.push_back(check_le("max |log ratio_h - log ratio_h0| across h", spread, 0.05));
  m["a"] = a;
  m["b"] = fit.slope;
  m["spread"] = spread;
}

void assess_gevrey(const RunConfig& cfg, const fs::path& dir, ScenarioReport& rep, json& m) {
  const auto t = read_table(dir / "gevrey.csv");
  const auto tau = t.column("tau_hat");
  bool increasing = tau.size() >= 2;
  for (std::size_t i = 0; i < tau.size(); ++i) {
    if (std::isnan(tau[i])) increasing = false;
    if (i > 0 && !(tau[i] > tau[i - 1])) increasing = false;
  }
  std::string list;
  for (double v : tau) list += (list.empty() ? "" : ", ") + fmt(v);
  rep.assertions.push_back(check_true("tau_hat strictly increasing in t", increasing, "tau_hat " + list));
  double worst = 0.0;
  for (double alpha : {0.25, 0.5, 1.0}) worst = std::max(worst, gevrey_constructed_error(cfg.solver.n, alpha, 0.7));
  rep.assertions.push_back(check_le("estimator error on constructed spectra", worst, 1e-3));
  m["tau_hat"] = tau;
  m["t"] = t.column("t");
  m["constructed_error"] = worst;
}

void assess_eps(const RunConfig& cfg, const fs::path& dir, ScenarioReport& rep, json& m) {
  const auto t = read_table(dir / "eps.csv");
  auto eps = t.column("epsilon");
  auto err = t.column("error");
  std::vector<std::size_t> order(eps.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return eps[a] > eps[b]; });
  std::vector<double> sorted;
  for (auto i : order) sorted.push_back(err[i]);
  rep.assertions.push_back(check_ge("error decreases strictly as eps decreases (min step)",
                                    strictly_decreasing_margin(sorted), std::numeric_limits<double>::min()));
  const auto lemma = inverse_lambda_eps_lemma(cfg.solver.n, 100, cfg.solver.seed, {0.0, 0.5, 1.0, 1.5},
                                              {0.0, 1e-3, 1e-1});
  rep.assertions.push_back(check_le("(Lambda^-1)_eps bound: max coefficient excess", lemma.max_excess, 1e-14));
  rep.assertions.push_back(check_le("(Lambda^-1)_0 equality error", lemma.max_equality_error, 1e-14));
  m["epsilon"] = eps;
  m["error"] = err;
}

void assess_galerkin(const RunConfig&, const fs::path& dir, ScenarioReport& rep, json& m) {
  const auto t = read_table(dir / "galerkin.csv");
  auto ng = t.column("galerkin_n");
  auto err = t.column("error");
  std::vector<std::size_t> order(ng.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ng[a] < ng[b]; });
  std::vector<double> sorted;
  for (auto i : order) sorted.push_back(err[i]);
  rep.assertions.push_back(check_ge("error decreases strictly with galerkin_n (min step)",
                                    strictly_decreasing_margin(sorted), std::numeric_limits<double>::min()));
  m["galerkin_n"] = ng;
  m["error"] = err;
}

void assess_trace(const RunConfig& cfg, const fs::path& dir, ScenarioReport& rep, json& m) {
  const auto t = read_table(dir / "trace.csv");
  const auto ns = cfg.integers("trace.N");
  const double from = cfg.real("trace.spinup") + cfg.real("trace.average_from");
  const auto time = t.column("t");
  std::vector<double> x, avg;
  for (auto n : ns) {
    const auto col = t.column("trace_" + std::to_string(n));
    double sum = 0.0;
    int count = 0;
    for (std::size_t k = 0; k < col.size(); ++k)
      if (time[k] >= from) {
        sum += col[k];
        ++count;
      }
    if (count == 0) fail(ErrorCode::precondition, "volume_trace: no trace samples in the averaging window");
    x.push_back(static_cast<double>(n));
    avg.push_back(sum / count);
  }
  const double alpha = cfg.solver.alpha;
  double exponent = std::numeric_limits<double>::quiet_NaN();
  bool positive = std::all_of(avg.begin(), avg.end(), [](double v) { return v > 0.0; });
  if (positive && x.size() >= 2) exponent = diagnostics::power_law_fit(x, avg).slope;
  rep.assertions.push_back(check_ge("time-averaged trace growth exponent in N", exponent, 1.0 + alpha / 2.0 - 0.15));
  const auto merge = lattice_merge_check(alpha, 32.0);
  rep.assertions.push_back(check_true("merged eigenvalue bound holds for every index", merge.bounds_hold));
  rep.assertions.push_back({"merged partial-sum exponent within [1+alpha/2-0.1, 1+alpha/2+0.15]",
                            merge.exponent >= 1.0 + alpha / 2.0 - 0.1 && merge.exponent <= 1.0 + alpha / 2.0 + 0.15,
                            merge.exponent, 1.0 + alpha / 2.0, ""});
  m["N"] = x;
  m["average_trace"] = avg;
  m["exponent"] = exponent;
  m["merge_exponent"] = merge.exponent;
}

fs::path resolve_dir(const RunConfig& cfg, const fs::path& override_dir) {
  return override_dir.empty() ? cfg.output_dir : override_dir;
}

template <class Fn>
void with_context(const std::string& scenario, Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    fail(e.code(), "scenario " + scenario + ": " + e.what());
  }
}

}  // namespace

bool ScenarioReport::passed() const {
  return !assertions.empty() &&
         std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
}

std::string ScenarioReport::to_json() const {
  json j;
  j["scenario"] = scenario;
  j["claim"] = claim;
  j["passed"] = passed();
  j["assertions"] = json::array();
  for (const auto& a : assertions) {
    json aj = {{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}};
    aj["value"] = std::isfinite(a.value) ? json(a.value) : json(fmt(a.value));
    aj["threshold"] = std::isfinite(a.threshold) ? json(a.threshold) : json(fmt(a.threshold));
    j["assertions"].push_back(aj);
  }
  j["measurements"] = json::parse(measurements_json);
  return j.dump(2);
}

State make_initial(const RunConfig& cfg, const spectral::TorusGrid& grid, std::uint64_t seed, double q_norm,
                   double u_norm) {
  const auto& ic = cfg.initial;
  if (ic.kind == "analytic") return solver::analytic_state(grid, ic.sigma, q_norm, u_norm);
  if (ic.kind == "random") return solver::random_state(grid, ic.slope, seed, q_norm, u_norm);
  if (ic.kind == "single_mode") return solver::single_mode_state(grid, ic.kx, ic.ky, ic.amplitude);
  return solver::snapshot_state(ic.q_path, ic.u1_path, ic.u2_path, grid.n());
}

ScenarioReport assess_scenario(const RunConfig& cfg, const fs::path& output_dir) {
  const fs::path dir = resolve_dir(cfg, output_dir);
  ScenarioReport rep;
  rep.scenario = cfg.scenario;
  rep.claim = claim_of(cfg.scenario);
  json m = json::object();
  with_context(cfg.scenario, [&] {
    const auto& s = cfg.scenario;
    if (s == "decay") assess_decay(cfg, dir, rep, m);
    else if (s == "lp_decay") assess_lp(cfg, dir, rep, m);
    else if (s == "absorbing_ball") assess_absorbing(cfg, dir, rep, m);
    else if (s == "lipschitz") assess_lipschitz(cfg, dir, rep, m);
    else if (s == "gevrey") assess_gevrey(cfg, dir, rep, m);
    else if (s == "eps_convergence") assess_eps(cfg, dir, rep, m);
    else if (s == "galerkin") assess_galerkin(cfg, dir, rep, m);
    else assess_trace(cfg, dir, rep, m);
  });
  rep.measurements_json = m.dump();
  return rep;
}

ScenarioReport run_scenario(const RunConfig& cfg, const fs::path& output_dir, bool overwrite) {
  const fs::path dir = resolve_dir(cfg, output_dir);
  if (fs::exists(dir) && !fs::is_empty(dir)) {
    if (!overwrite) fail(ErrorCode::io, "output directory " + dir.string() + " is not empty (use --overwrite)");
    fs::remove_all(dir);
  }
  fs::create_directories(dir);
  {
    std::ofstream echo(dir / "resolved.cfg");
    echo << echo_config(cfg);
  }
  with_context(cfg.scenario, [&] {
    const auto& s = cfg.scenario;
    if (s == "decay") simulate_decay(cfg, dir);
    else if (s == "lp_decay") simulate_single(cfg, dir);
    else if (s == "absorbing_ball") simulate_absorbing(cfg, dir);
    else if (s == "lipschitz") simulate_lipschitz(cfg, dir);
    else if (s == "gevrey") simulate_gevrey(cfg, dir);
    else if (s == "eps_convergence") simulate_eps(cfg, dir);
    else if (s == "galerkin") simulate_galerkin(cfg, dir);
    else simulate_trace(cfg, dir);
  });
  auto rep = assess_scenario(cfg, dir);
  std::ofstream(dir / "summary.json") << rep.to_json() << '\n';
  return rep;
}

LemmaCheck inverse_lambda_eps_lemma(int n, int fields, std::uint64_t seed, const std::vector<double>& s_values,
                                    const std::vector<double>& eps_values) {
  const spectral::TorusGrid grid(n);
  LemmaCheck out;
  for (int i = 0; i < fields; ++i) {
    const auto f = solver::random_state(grid, 1.0, seed + static_cast<std::uint64_t>(i), 1.0, 0.0).q;
    for (double s : s_values) {
      const auto rhs = ops::fractional_laplacian(f, s - 1.0);
      for (double eps : eps_values) {
        const auto lhs = ops::fractional_laplacian(ops::inverse_lambda_eps(f, eps), s);
        const auto a = lhs.coeffs();
        const auto b = rhs.coeffs();
        for (std::size_t k = 1; k < a.size(); ++k) {
          if (std::abs(b[k]) == 0.0) {
            out.max_excess = std::max(out.max_excess, std::abs(a[k]));
            continue;
          }
          out.max_excess = std::max(out.max_excess, std::abs(a[k]) / std::abs(b[k]) - 1.0);
          if (eps == 0.0) out.max_equality_error = std::max(out.max_equality_error, std::abs(a[k] - b[k]) / std::abs(b[k]));
        }
      }
    }
  }
  out.passed = out.max_excess <= 1e-14 && out.max_equality_error <= 1e-14;
  return out;
}

MergeCheck lattice_merge_check(double alpha, double radius) {
  const auto l1 = diagnostics::lattice_eigenvalues(radius, alpha);
  const auto l2 = diagnostics::lattice_eigenvalues(radius, 2.0);
  const double b1 = alpha / 2.0, b2 = 1.0;
  const auto rep = diagnostics::eigen_merge_bound(l1, l2, diagnostics::growth_constant(l1, b1),
                                                  diagnostics::growth_constant(l2, b2), b1, b2);
  return {rep.all_bounds_hold, rep.exponent, static_cast<int>(rep.mu.size())};
}

double gevrey_constructed_error(int n, double alpha, double tau) {
  const spectral::TorusGrid grid(n);
  spectral::SpectralField f(grid);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid.partner(i) <= i || grid.nyquist(i)) continue;
    const double amp = std::exp(-tau * std::pow(grid.kmag(i), alpha / 2.0));
    f.set_pair(grid.kx(i), grid.ky(i), std::polar(amp, 0.37 * grid.kx(i) - 0.81 * grid.ky(i)));
  }
  return std::abs(diagnostics::gevrey_radius_fit(f, alpha) - tau);
}

}  // namespace electroflow::app
