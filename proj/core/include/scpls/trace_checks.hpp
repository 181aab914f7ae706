// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#pragma once

#include <optional>

#include "scpls/solver.hpp"

namespace scpls {

/// Tally of invariant violations over a finished run. Everything is
/// recomputed from the stored iterates, independently of the values the
/// solver compared internally.
struct TraceCheckReport {
  int decrease_violations = 0;
  double worst_decrease_gap = 0.0;
  int feasibility_violations = 0;
  double worst_feasibility = 0.0;
  int moduli_violations = 0;
  int complementarity_violations = 0;
  double worst_complementarity = 0.0;

  bool ok() const {
    return decrease_violations == 0 && feasibility_violations == 0 && moduli_violations == 0 &&
           complementarity_violations == 0;
  }
};

/// Checks sufficient decrease (quantitative when require_sufficient_decrease,
/// plain monotonicity otherwise), iterate feasibility against the reporting
/// slack, modulus bounds and surrogate complementarity. Needs the iterate
/// history. true moduli, when supplied, tighten the modulus bound.
TraceCheckReport check_trace_invariants(const DcProblem& problem, const SolveResult& result,
                                        const SolverConfig& config,
                                        bool require_sufficient_decrease,
                                        std::optional<double> true_obj_modulus = std::nullopt,
                                        std::optional<double> true_con_modulus = std::nullopt);

}  // namespace scpls
