#include "diagnostics/trace.hpp"

#include "common/error.hpp"

namespace electroflow::diagnostics {

std::vector<double> trace_terms(solver::Solver& solver, const solver::FieldPair& base,
                                const solver::TangentState& frame) {
  const auto phys = solver.physical(base);
  std::vector<double> out;
  out.reserve(frame.size());
  for (const auto& phi : frame.vectors) {
    const auto j = solver.linearized_rhs(phys, phi);
    out.push_back(solver.linear_form(phi) - solver::inner(j, phi));
  }
  return out;
}

double trace_estimate(solver::Solver& solver, const solver::FieldPair& base, const solver::TangentState& frame,
                      int n) {
  if (n < 0 || n > static_cast<int>(frame.size())) fail(ErrorCode::invalid_argument, "trace_estimate: N out of range");
  if (n == 0) return 0.0;
  solver::TangentState head;
  head.vectors.assign(frame.vectors.begin(), frame.vectors.begin() + n);
  double sum = 0.0;
  for (double v : trace_terms(solver, base, head)) sum += v;
  return sum;
}

double TraceSeries::time_average(int n, double t_from) const {
  double sum = 0.0;
  int count = 0;
  for (std::size_t s = 0; s < t.size(); ++s) {
    if (t[s] < t_from) continue;
    sum += partial[s].at(static_cast<std::size_t>(n - 1));
    ++count;
  }
  if (count == 0) fail(ErrorCode::precondition, "TraceSeries::time_average: no samples after t_from");
  return sum / count;
}

TraceSeries trace_series(solver::Solver& solver, solver::State& base, solver::TangentState& frame, int steps,
                         int sample_every) {
  if (sample_every < 1) fail(ErrorCode::invalid_argument, "trace_series: sample_every must be >= 1");
  TraceSeries out;
  const int every = solver.config().reorth_interval;
  solver::orthonormalize(frame);
  for (int k = 1; k <= steps; ++k) {
    solver::advance_with_tangents(solver, base, frame);
    const bool sample = k % sample_every == 0;
    if (k % every == 0 || sample) solver::orthonormalize(frame);
    if (!sample) continue;
    const auto terms = trace_terms(solver, base, frame);
    std::vector<double> partial(terms.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) partial[i] = sum += terms[i];
    out.t.push_back(base.t);
    out.partial.push_back(std::move(partial));
  }
  return out;
}

}  // namespace electroflow::diagnostics
