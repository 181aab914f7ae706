// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#include "scpls/trace_checks.hpp"

#include <cmath>

namespace scpls {

TraceCheckReport check_trace_invariants(const DcProblem& problem, const SolveResult& result,
                                        const SolverConfig& config,
                                        bool require_sufficient_decrease,
                                        std::optional<double> true_obj_modulus,
                                        std::optional<double> true_con_modulus) {
  if (result.iterates.size() != result.trace.size() + 1)
    throw InvalidArgument("check_trace_invariants: needs the full iterate history");
  if (problem.constraints.size() != 1)
    throw UnsupportedConfiguration("check_trace_invariants: single-constraint traces only");

  const ConstraintFunction& g = problem.constraints[0];
  const auto objective = [&problem](const Vector& x) {
    return problem.f.value(x) + problem.p1.value(x) - problem.p2.value(x);
  };

  // Upper modulus bound from the backtracking schedule. With the true moduli
  // known, the escalation count k1 is the smallest power of the backtracking
  // factor lifting modulus_min above max((c + Lf)/2, Lg).
  double modulus_cap = std::numeric_limits<double>::infinity();
  if (true_obj_modulus && true_con_modulus) {
    const double target = std::max(0.5 * (config.decrease_coeff + *true_obj_modulus),
                                   *true_con_modulus);
    const double k1 =
        std::ceil(std::log(target / config.modulus_min) / std::log(config.backtrack_factor));
    modulus_cap = config.backtrack_factor *
                  std::max(config.modulus_max,
                           std::pow(config.backtrack_factor, k1) * config.modulus_min);
  }

  TraceCheckReport report;
  double objective_prev = objective(result.iterates[0]);

  for (std::size_t t = 0; t < result.trace.size(); ++t) {
    const IterateRecord& rec = result.trace[t];
    const Vector& x_t = result.iterates[t];
    const Vector& x_next = result.iterates[t + 1];
    const double step_sq = (x_next - x_t).squaredNorm();
    const double objective_next = objective(x_next);

    if (require_sufficient_decrease) {
      const double bound = objective_prev - 0.5 * config.decrease_coeff * step_sq;
      if (objective_next > bound) {
        ++report.decrease_violations;
        report.worst_decrease_gap = std::max(report.worst_decrease_gap, objective_next - bound);
      }
    } else {
      const double slack = 1e-10 * std::max(1.0, std::abs(objective_prev));
      if (objective_next > objective_prev + slack) {
        ++report.decrease_violations;
        report.worst_decrease_gap =
            std::max(report.worst_decrease_gap, objective_next - objective_prev);
      }
    }
    objective_prev = objective_next;

    const double g_next = g.value(x_next);
    if (g_next > config.feasibility_report_slack) {
      ++report.feasibility_violations;
      report.worst_feasibility = std::max(report.worst_feasibility, g_next);
    }

    const bool has_obj_modulus = rec.obj_modulus > 0.0;  // the baseline records zero
    if ((has_obj_modulus &&
         (rec.obj_modulus < config.modulus_min || rec.obj_modulus > modulus_cap)) ||
        rec.con_moduli[0] < config.modulus_min || rec.con_moduli[0] > modulus_cap)
      ++report.moduli_violations;

    // Surrogate complementarity, recomputed from scratch.
    const double w = rec.con_moduli[0];
    const double surrogate = g.value(x_t) + g.gradient(x_t).dot(x_next - x_t) + 0.5 * w * step_sq;
    const double lambda = rec.multipliers[0];
    const double comp = std::abs(lambda * surrogate);
    if (comp > 1e-10 * (1.0 + std::abs(lambda))) {
      ++report.complementarity_violations;
      report.worst_complementarity = std::max(report.worst_complementarity, comp);
    }
  }
  return report;
}

}  // namespace scpls
