// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#include "scpls/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "scpls/ball.hpp"
#include "scpls/subproblem.hpp"

namespace scpls {
namespace {

using Clock = std::chrono::steady_clock;

double objective_value(const DcProblem& problem, const Vector& x) {
  return problem.f.value(x) + problem.p1.value(x) - problem.p2.value(x);
}

void validate_config(const SolverConfig& config) {
  if (config.decrease_coeff <= 0.0) throw InvalidArgument("solver: decrease_coeff must be > 0");
  if (config.backtrack_factor <= 1.0) throw InvalidArgument("solver: backtrack_factor must be > 1");
  if (!(0.0 < config.modulus_min && config.modulus_min < config.modulus_max))
    throw InvalidArgument("solver: need 0 < modulus_min < modulus_max");
  if (config.step_tol <= 0.0) throw InvalidArgument("solver: step_tol must be > 0");
  if (config.subproblem_tol <= 0.0) throw InvalidArgument("solver: subproblem_tol must be > 0");
}

void validate_problem(const DcProblem& problem, const Vector& x0) {
  if (problem.dimension <= 0 || x0.size() != problem.dimension)
    throw InvalidArgument("solver: start point does not match the problem dimension");
  if (problem.p1.kind != RegularizerKind::ell1)
    throw UnsupportedConfiguration("solver: the convex part must be the l1 norm");
  if (problem.constraints.size() != 1)
    throw UnsupportedConfiguration(
        "solver: only a single constraint is supported (multi-ball subproblems need an "
        "iterative solver)");
}

double clamp_modulus(double v, const SolverConfig& config) {
  return std::clamp(v, config.modulus_min, config.modulus_max);
}

double elapsed_seconds(const Clock::time_point& start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

Vector single(double v) {
  Vector out(1);
  out[0] = v;
  return out;
}

}  // namespace

double bb_init(const Vector& dx, const Vector& dg, double prev_modulus,
               const SolverConfig& config) {
  if (dx.size() != dg.size()) throw InvalidArgument("bb_init: dimension mismatch");
  const double corr = dx.dot(dg);
  const double v =
      corr >= 1e-12 ? corr / dx.squaredNorm() : prev_modulus / config.backtrack_factor;
  return clamp_modulus(v, config);
}

bool check_termination(const Vector& x_prev, const Vector& x_next, double tol) {
  if (x_prev.size() != x_next.size()) throw InvalidArgument("check_termination: dimension mismatch");
  return (x_next - x_prev).norm() < tol * std::max(1.0, x_next.norm());
}

LineSearchResult inner_line_search(const DcProblem& problem, const Vector& x_t,
                                   const Vector& xi_t, double obj_modulus0,
                                   const Vector& con_moduli0, const SolverConfig& config) {
  validate_config(config);
  validate_problem(problem, x_t);
  if (con_moduli0.size() != 1) throw UnsupportedConfiguration("inner_line_search: expected one modulus");

  const ConstraintFunction& g = problem.constraints[0];
  const double g_t = g.value(x_t);
  if (g_t > 0.0) throw InvalidArgument("inner_line_search: infeasible base point");

  const Vector grad_g_t = g.gradient(x_t);
  const Vector grad_f_t = problem.f.gradient(x_t);
  const double objective_t = objective_value(problem, x_t);

  Linearization lin;
  lin.base_point = x_t;
  lin.g_value = g_t;
  lin.g_grad = grad_g_t;
  lin.source_index = 0;

  double obj_modulus = obj_modulus0;
  double con_modulus = con_moduli0[0];
  for (int count = 1;; ++count) {
    if (count > config.max_inner)
      throw InnerLoopExhausted("inner_line_search: exceeded max_inner = " +
                               std::to_string(config.max_inner));

    lin.modulus = con_modulus;
    const BallConstraint ball = to_ball(lin);

    QuadBallSubproblem sp;
    sp.anchor = x_t - (grad_f_t - xi_t) / obj_modulus;
    sp.center = ball.center;
    sp.radius_sq = ball.radius_sq;
    sp.prox_weight = obj_modulus;
    const SubproblemSolution sol = solve_quad_ball(sp, config.subproblem_tol);

    // Feasibility first; a NaN from an overflowing constraint counts as a
    // violation here.
    const double g_trial = g.value(sol.x_star);
    if (!(g_trial <= 0.0)) {
      con_modulus *= config.backtrack_factor;
      continue;
    }

    const double objective_trial = objective_value(problem, sol.x_star);
    const double step_sq = (sol.x_star - x_t).squaredNorm();
    if (!(objective_trial <= objective_t - 0.5 * config.decrease_coeff * step_sq)) {
      obj_modulus *= config.backtrack_factor;
      continue;
    }

    LineSearchResult out;
    out.x_next = sol.x_star;
    out.obj_modulus = obj_modulus;
    out.con_moduli = single(con_modulus);
    out.multipliers = single(sol.lambda_star);
    out.inner_count = count;
    out.objective_next = objective_trial;
    out.g_next = single(g_trial);
    out.subproblem_feasibility = sol.kkt_feasibility;
    out.subproblem_complementarity = sol.kkt_complementarity;
    return out;
  }
}

SolveResult run_scp_ls(const DcProblem& problem, const Vector& x0, const SolverConfig& config) {
  validate_config(config);
  validate_problem(problem, x0);

  const ConstraintFunction& g = problem.constraints[0];
  if (g.value(x0) > 0.0) throw InvalidArgument("run_scp_ls: start point is infeasible");

  const auto start = Clock::now();
  SolveResult result;
  result.status = SolveStatus::max_outer;
  if (config.keep_iterates) result.iterates.push_back(x0);

  Vector x = x0;
  Vector prev_x;
  Vector prev_grad_g;
  double accepted_con_modulus = config.con_modulus_init_value;

  for (long t = 0; t < config.max_outer; ++t) {
    const Vector xi = subgradient_p2(problem.p2, x);
    const Vector grad_g = g.gradient(x);

    const double obj_modulus0 =
        clamp_modulus(config.obj_modulus_init == ObjModulusInit::constant_one
                          ? 1.0
                          : config.obj_modulus_init_value,
                      config);
    double con_modulus0;
    if (t == 0 || config.con_modulus_init == ConModulusInit::constant) {
      con_modulus0 = clamp_modulus(config.con_modulus_init_value, config);
    } else {
      con_modulus0 = bb_init(x - prev_x, grad_g - prev_grad_g, accepted_con_modulus, config);
    }

    LineSearchResult ls;
    try {
      ls = inner_line_search(problem, x, xi, obj_modulus0,
                             single(con_modulus0), config);
    } catch (const InnerLoopExhausted& e) {
      result.status = SolveStatus::numerical_failure;
      result.failure_message = e.what();
      break;
    }

    IterateRecord rec;
    rec.t = t;
    rec.step_norm = (ls.x_next - x).norm();
    rec.objective = ls.objective_next;
    rec.g_values = ls.g_next;
    rec.obj_modulus = ls.obj_modulus;
    rec.con_moduli = ls.con_moduli;
    rec.multipliers = ls.multipliers;
    rec.inner_count = ls.inner_count;
    rec.stationarity = stationarity_residual(problem, ls.x_next, ls.multipliers, xi).stationarity;
    rec.elapsed_s = config.record_timing ? elapsed_seconds(start) : 0.0;
    result.trace.push_back(std::move(rec));

    prev_x = std::move(x);
    prev_grad_g = grad_g;
    accepted_con_modulus = ls.con_moduli[0];
    x = ls.x_next;
    if (config.keep_iterates) result.iterates.push_back(x);

    if (check_termination(prev_x, x, config.step_tol)) {
      result.status = SolveStatus::converged;
      break;
    }
  }

  result.x_final = x;
  if (config.keep_iterates) {
    std::vector<double> errors;
    errors.reserve(result.iterates.size());
    for (const Vector& xt : result.iterates) errors.push_back((xt - result.x_final).norm());
    result.fitted_rate = fit_linear_rate(errors);
  }
  return result;
}

SolveResult run_scp(const DcProblem& problem, const Vector& x0, const SolverConfig& config) {
  validate_config(config);
  validate_problem(problem, x0);

  const ConstraintFunction& g = problem.constraints[0];
  if (!g.lipschitz_grad)
    throw InvalidArgument("run_scp: the fixed-modulus baseline needs a constraint gradient modulus");
  // Nudged above the estimate so the quadratic model still majorizes the
  // constraint when the modulus comes from an iterative eigenvalue estimate.
  const double modulus = *g.lipschitz_grad * (1.0 + 1e-6);

  double g_curr = g.value(x0);
  if (g_curr > 0.0) throw InvalidArgument("run_scp: start point is infeasible");

  const auto start = Clock::now();
  SolveResult result;
  result.status = SolveStatus::max_outer;
  if (config.keep_iterates) result.iterates.push_back(x0);

  Vector x = x0;
  Linearization lin;
  lin.modulus = modulus;
  lin.source_index = 0;

  for (long t = 0; t < config.max_outer; ++t) {
    const Vector xi = subgradient_p2(problem.p2, x);
    const Vector grad_f = problem.f.gradient(x);

    lin.base_point = x;
    lin.g_value = g_curr;
    lin.g_grad = g.gradient(x);
    const BallConstraint ball = to_ball(lin);

    LinBallSubproblem sp;
    sp.linear_coeff = xi - grad_f;
    sp.center = ball.center;
    sp.radius_sq = ball.radius_sq;
    const SubproblemSolution sol = solve_lin_ball(sp, config.subproblem_tol);

    const double g_next = g.value(sol.x_star);

    IterateRecord rec;
    rec.t = t;
    rec.step_norm = (sol.x_star - x).norm();
    rec.objective = objective_value(problem, sol.x_star);
    rec.g_values = single(g_next);
    rec.obj_modulus = 0.0;  // no proximal weight in the baseline
    rec.con_moduli = single(modulus);
    rec.multipliers = single(sol.lambda_star);
    rec.inner_count = 1;
    rec.stationarity = stationarity_residual(problem, sol.x_star, rec.multipliers, xi).stationarity;
    rec.elapsed_s = config.record_timing ? elapsed_seconds(start) : 0.0;
    result.trace.push_back(std::move(rec));

    const Vector x_prev = std::move(x);
    x = sol.x_star;
    g_curr = g_next;
    if (config.keep_iterates) result.iterates.push_back(x);

    if (check_termination(x_prev, x, config.step_tol)) {
      result.status = SolveStatus::converged;
      break;
    }
  }

  result.x_final = x;
  if (config.keep_iterates) {
    std::vector<double> errors;
    errors.reserve(result.iterates.size());
    for (const Vector& xt : result.iterates) errors.push_back((xt - result.x_final).norm());
    result.fitted_rate = fit_linear_rate(errors);
  }
  return result;
}

}  // namespace scpls
