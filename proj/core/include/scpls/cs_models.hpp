// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#pragma once

#include <cstdint>
#include <optional>

#include "scpls/problem.hpp"

namespace scpls {

enum class Loss { sq_l2, lorentzian, logistic, poisson };

const char* loss_name(Loss loss);
std::optional<Loss> loss_from_name(const std::string& name);

/// One synthetic sparse recovery instance.
struct CsInstance {
  Matrix A;       // q x n, unit-norm columns, full row rank
  Vector b;       // measurements (or labels/counts for logistic/poisson)
  Vector x_orig;  // ground-truth sparse signal
  double delta = 0.0;
  double gamma = 0.0;  // Lorentzian scale, unused otherwise
  double mu = 0.0;
  Loss loss = Loss::sq_l2;
  std::uint64_t seed = 0;
  int s0 = 0;  // support size
};

struct GenerateOptions {
  int q = 72;
  int n = 256;
  int s0 = 8;
  double mu = 0.0;
  Loss loss = Loss::sq_l2;
  std::uint64_t seed = 1;
  double delta_scale = 1.1;
  double gamma = 0.02;
  std::optional<double> delta;  // required for logistic and poisson
};

/// q = 720*i, n = 2560*i, s0 = floor(q/9).
GenerateOptions scaled_options(int i_scale);

/// Draws A, support, signal and noise from one seeded stream, normalizes the
/// columns of A, sets delta per loss and validates rank, nontriviality and
/// the absence of zero columns.
CsInstance generate_instance(const GenerateOptions& options);

// Constraint builders. Values include the -delta shift so the constraint is
// value(x) <= 0 throughout.
ConstraintFunction sq_l2_constraint(const Matrix& A, const Vector& b, double delta);
ConstraintFunction lorentzian_constraint(const Matrix& A, const Vector& b, double delta,
                                         double gamma);
// These two compose with z = Ax directly; b enters as labels resp. counts.
ConstraintFunction logistic_constraint(const Matrix& A, const Vector& b, double delta);
ConstraintFunction poisson_constraint(const Matrix& A, const Vector& b, double delta);

/// Minimum-norm solution of Ax = b through a rank-revealing factorization.
Vector min_norm_init(const Matrix& A, const Vector& b);

/// Largest eigenvalue of A^T A by power iteration with a fixed seeded start.
double power_lambda_max(const Matrix& A, double tol = 1e-10, int max_iters = 1000);

/// Sum of log(1 + y_i^2/gamma^2).
double lorentzian_norm(const Vector& y, double gamma);

/// Assembles the model: l1 minus mu times the Euclidean norm under the
/// instance's loss constraint.
DcProblem make_problem(const CsInstance& instance);

/// A strictly feasible start: the minimum-norm solution for the residual
/// losses, a numerically located Slater point for logistic/poisson.
Vector feasible_init(const CsInstance& instance);

}  // namespace scpls
