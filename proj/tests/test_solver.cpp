// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#include "scpls/solver.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <cstring>

#include "scpls/cs_models.hpp"
#include "scpls/rng.hpp"
#include "scpls/trace_checks.hpp"

using namespace scpls;

namespace {

// min |x|_1 s.t. (1/2)|x - (2,0)|^2 <= 1/2. The feasible disk has radius 1
// around (2,0); the l1-smallest feasible point is (1,0).
DcProblem disk_toy() {
  DcProblem p;
  p.dimension = 2;
  p.f = SmoothTerm::zero();
  p.p1 = ConvexRegularizer::ell1();
  p.p2 = ConvexRegularizer::none();
  ConstraintFunction g;
  g.value = [](const Vector& x) {
    Vector c(2);
    c << 2.0, 0.0;
    return 0.5 * (x - c).squaredNorm() - 0.5;
  };
  g.gradient = [](const Vector& x) {
    Vector c(2);
    c << 2.0, 0.0;
    return Vector(x - c);
  };
  g.lipschitz_grad = 1.0;
  p.constraints.push_back(std::move(g));
  return p;
}

Vector toy_start() {
  Vector x(2);
  x << 2.0, 0.0;
  return x;
}

// Coarse polar sweep of the disk boundary and interior as a sanity oracle
// for the toy's optimal l1 value.
double toy_grid_best() {
  double best = std::numeric_limits<double>::infinity();
  for (int ir = 0; ir <= 100; ++ir) {
    const double r = ir / 100.0;
    for (int ia = 0; ia < 720; ++ia) {
      const double a = 2.0 * M_PI * ia / 720.0;
      best = std::min(best, std::abs(2.0 + r * std::cos(a)) + std::abs(r * std::sin(a)));
    }
  }
  return best;
}

}  // namespace

TEST_CASE("line search solver finds the l1-smallest point of the disk") {
  const DcProblem p = disk_toy();
  SolverConfig config;
  const SolveResult res = run_scp_ls(p, toy_start(), config);

  REQUIRE(res.status == SolveStatus::converged);
  CHECK(res.x_final[0] == Catch::Approx(1.0).margin(1e-6));
  CHECK(res.x_final[1] == Catch::Approx(0.0).margin(1e-6));
  CHECK(std::abs(res.x_final.lpNorm<1>() - toy_grid_best()) <= 1e-3);

  const auto report = check_trace_invariants(p, res, config, true, 0.0, 1.0);
  CHECK(report.ok());

  // Objective values never increase along the trace.
  for (std::size_t t = 1; t < res.trace.size(); ++t)
    CHECK(res.trace[t].objective <= res.trace[t - 1].objective);
}

TEST_CASE("fixed-modulus baseline reaches the same optimum") {
  const DcProblem p = disk_toy();
  SolverConfig config;
  const SolveResult ls = run_scp_ls(p, toy_start(), config);
  const SolveResult fixed = run_scp(p, toy_start(), config);

  REQUIRE(fixed.status == SolveStatus::converged);
  CHECK((fixed.x_final - ls.x_final).norm() <= 1e-6);

  const auto report = check_trace_invariants(p, fixed, config, false, 0.0, 1.0);
  CHECK(report.ok());
  CHECK(fixed.trace.size() >= ls.trace.size());
}

TEST_CASE("solver rejects bad inputs") {
  const DcProblem p = disk_toy();
  SolverConfig config;

  Vector infeasible(2);
  infeasible << 0.0, 0.0;  // g = 2 - 0.5 > 0
  CHECK_THROWS_AS(run_scp_ls(p, infeasible, config), InvalidArgument);
  CHECK_THROWS_AS(run_scp(p, infeasible, config), InvalidArgument);

  DcProblem two = disk_toy();
  two.constraints.push_back(two.constraints[0]);
  CHECK_THROWS_AS(run_scp_ls(two, toy_start(), config), UnsupportedConfiguration);

  DcProblem wrong_p1 = disk_toy();
  wrong_p1.p1 = ConvexRegularizer::none();
  CHECK_THROWS_AS(run_scp_ls(wrong_p1, toy_start(), config), UnsupportedConfiguration);

  DcProblem no_modulus = disk_toy();
  no_modulus.constraints[0].lipschitz_grad = std::nullopt;
  CHECK_THROWS_AS(run_scp(no_modulus, toy_start(), config), InvalidArgument);

  SolverConfig bad = config;
  bad.backtrack_factor = 1.0;
  CHECK_THROWS_AS(run_scp_ls(p, toy_start(), bad), InvalidArgument);
}

TEST_CASE("iteration cap yields the max_outer status") {
  SolverConfig config;
  config.max_outer = 3;
  const SolveResult res = run_scp_ls(disk_toy(), toy_start(), config);
  CHECK(res.status == SolveStatus::max_outer);
  CHECK(res.trace.size() == 3);
}

TEST_CASE("bb_init formula, fallback and clamping") {
  SolverConfig config;

  Vector dx(2), dg(2);
  dx << 1.0, 0.0;
  dg << 2.0, 0.0;
  CHECK(bb_init(dx, dg, 1.0, config) == 2.0);

  dg << 1e-13, 0.0;  // correlation below the threshold: fall back to prev/tau
  CHECK(bb_init(dx, dg, 4.0, config) == 2.0);

  dx << 1e-9, 0.0;
  dg << 1.0, 0.0;  // quotient 1e9 hits the upper clamp
  CHECK(bb_init(dx, dg, 1.0, config) == 1e8);

  dx.setZero();
  dg << 1.0, 1.0;  // zero step: correlation is 0, fallback branch
  CHECK(bb_init(dx, dg, 8.0, config) == 4.0);

  CHECK_THROWS_AS(bb_init(Vector::Zero(2), Vector::Zero(3), 1.0, config), InvalidArgument);
}

TEST_CASE("termination test") {
  Vector a(2), b(2);
  a << 1.0, 1.0;
  CHECK(check_termination(a, a, 1e-12));

  b = a;
  b[0] += 1e-7;
  Vector big = Vector::Constant(2, 14.15);  // norm ~ 20
  Vector big_moved = big;
  big_moved[0] += 1e-7;
  CHECK(check_termination(big, big_moved, 1e-8));   // 1e-7 < 1e-8 * 20
  CHECK_FALSE(check_termination(a, b, 1e-8));       // 1e-7 >= 1e-8 * max(1, ~1.4)
}

TEST_CASE("inner loop accepts immediately when both moduli are large enough") {
  const DcProblem p = disk_toy();
  SolverConfig config;
  config.con_modulus_init = ConModulusInit::constant;
  config.con_modulus_init_value = 2.0;  // true modulus is 1

  const SolveResult res = run_scp_ls(p, toy_start(), config);
  REQUIRE(res.status == SolveStatus::converged);
  for (const IterateRecord& rec : res.trace) CHECK(rec.inner_count == 1);
}

TEST_CASE("zero smooth term never trips the objective backtrack") {
  // With f = 0 the decrease test holds whenever the prox weight is at least
  // half the decrease coefficient, so the objective modulus stays at its
  // initial value.
  const DcProblem p = disk_toy();
  SolverConfig config;
  const SolveResult res = run_scp_ls(p, toy_start(), config);
  for (const IterateRecord& rec : res.trace) CHECK(rec.obj_modulus == 1.0);
}

TEST_CASE("deliberately small initial constraint modulus stays within the doubling budget") {
  GenerateOptions opts;  // desk preset
  const CsInstance inst = generate_instance(opts);
  const DcProblem p = make_problem(inst);
  const Vector x0 = feasible_init(inst);

  SolverConfig config;
  config.con_modulus_init_value = 1e-8;
  const SolveResult res = run_scp_ls(p, x0, config);
  REQUIRE(res.status == SolveStatus::converged);

  const double true_con = *p.constraints[0].lipschitz_grad;
  const double target = std::max(0.5 * config.decrease_coeff, true_con);
  const int k1 = static_cast<int>(
      std::ceil(std::log(target / config.modulus_min) / std::log(config.backtrack_factor)));
  for (const IterateRecord& rec : res.trace) CHECK(rec.inner_count <= 2 * k1);
}

TEST_CASE("identical inputs give bitwise identical traces") {
  GenerateOptions opts;
  opts.q = 24;
  opts.n = 64;
  opts.s0 = 4;
  opts.seed = 77;
  const CsInstance inst = generate_instance(opts);
  const DcProblem p = make_problem(inst);
  const Vector x0 = feasible_init(inst);

  SolverConfig config;
  const SolveResult a = run_scp_ls(p, x0, config);
  const SolveResult b = run_scp_ls(p, x0, config);

  REQUIRE(a.trace.size() == b.trace.size());
  for (std::size_t t = 0; t < a.trace.size(); ++t) {
    CHECK(std::memcmp(&a.trace[t].objective, &b.trace[t].objective, sizeof(double)) == 0);
    CHECK(std::memcmp(&a.trace[t].step_norm, &b.trace[t].step_norm, sizeof(double)) == 0);
    CHECK(a.trace[t].inner_count == b.trace[t].inner_count);
  }
  CHECK(std::memcmp(a.x_final.data(), b.x_final.data(),
                    sizeof(double) * static_cast<std::size_t>(a.x_final.size())) == 0);
}

TEST_CASE("multipliers stay finite and are reported") {
  const DcProblem p = disk_toy();
  SolverConfig config;
  const SolveResult res = run_scp_ls(p, toy_start(), config);
  double max_multiplier = 0.0;
  for (const IterateRecord& rec : res.trace) {
    REQUIRE(std::isfinite(rec.multipliers[0]));
    CHECK(rec.multipliers[0] >= 0.0);
    max_multiplier = std::max(max_multiplier, rec.multipliers[0]);
  }
  CHECK(std::isfinite(max_multiplier));
}
