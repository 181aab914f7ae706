// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#pragma once

#include <string>
#include <vector>

#include "scpls/diagnostics.hpp"
#include "scpls/problem.hpp"

namespace scpls {

enum class ObjModulusInit { constant_one, custom };
enum class ConModulusInit { barzilai_borwein, constant };

struct SolverConfig {
  double decrease_coeff = 1e-4;   // c in the sufficient decrease test
  double backtrack_factor = 2.0;  // tau, multiplies a rejected modulus
  double modulus_min = 1e-8;
  double modulus_max = 1e8;

  ObjModulusInit obj_modulus_init = ObjModulusInit::constant_one;
  double obj_modulus_init_value = 1.0;  // used by the custom policy
  ConModulusInit con_modulus_init = ConModulusInit::barzilai_borwein;
  double con_modulus_init_value = 1.0;  // first iteration, or every one when constant

  double step_tol = 1e-8;  // relative step termination threshold
  long max_outer = 200000;
  int max_inner = 1000;
  double subproblem_tol = 1e-12;
  double feasibility_report_slack = 1e-12;

  // Diagnostics toggles. Timing is off by default so that emitted traces are
  // byte-for-byte reproducible; iterate history feeds error curves and the
  // empirical rate fit.
  bool record_timing = false;
  bool keep_iterates = true;
};

/// One accepted outer iteration.
struct IterateRecord {
  long t = 0;
  double step_norm = 0.0;  // |x^{t+1} - x^t|
  double objective = 0.0;  // F(x^{t+1})
  Vector g_values;
  double obj_modulus = 0.0;   // accepted Lf
  Vector con_moduli;          // accepted Lg
  Vector multipliers;         // subproblem multipliers
  int inner_count = 0;
  double stationarity = 0.0;
  double elapsed_s = 0.0;
};

enum class SolveStatus { converged, max_outer, numerical_failure };

struct SolveResult {
  Vector x_final;
  SolveStatus status = SolveStatus::max_outer;
  std::vector<IterateRecord> trace;
  std::optional<RateFit> fitted_rate;

  // Accepted iterates including the start point; empty when keep_iterates is
  // off. Distance-to-final error curves are derived from this.
  std::vector<Vector> iterates;
  std::string failure_message;
};

struct LineSearchResult {
  Vector x_next;
  double obj_modulus = 0.0;
  Vector con_moduli;
  Vector multipliers;
  int inner_count = 0;
  // extras shared with the outer loop
  double objective_next = 0.0;
  Vector g_next;
  double subproblem_feasibility = 0.0;
  double subproblem_complementarity = 0.0;
};

/// Backtracking inner loop: solves the ball-constrained prox subproblem and
/// escalates the constraint modulus on infeasibility first, then the
/// objective modulus on insufficient decrease, exactly in that order.
LineSearchResult inner_line_search(const DcProblem& problem, const Vector& x_t,
                                   const Vector& xi_t, double obj_modulus0,
                                   const Vector& con_moduli0, const SolverConfig& config);

/// Curvature-based initial constraint modulus, clamped to the configured
/// bounds; falls back to prev/backtrack_factor when the correlation is tiny.
double bb_init(const Vector& dx, const Vector& dg, double prev_modulus,
               const SolverConfig& config);

/// True iff |x_next - x_prev| < tol * max(1, |x_next|).
bool check_termination(const Vector& x_prev, const Vector& x_next, double tol);

/// Sequential convex programming with monotone line search. Requires an l1
/// convex part, a single constraint and a feasible start point.
SolveResult run_scp_ls(const DcProblem& problem, const Vector& x0, const SolverConfig& config);

/// Fixed-modulus baseline: linearizes everything but the l1 term, solves the
/// linear ball subproblem and accepts unconditionally. Requires a known
/// constraint gradient modulus.
SolveResult run_scp(const DcProblem& problem, const Vector& x0, const SolverConfig& config);

}  // namespace scpls
