// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#pragma once

#include <stdexcept>
#include <string>

namespace scpls {

// Bad caller input (dimension mismatch, infeasible start point, r <= 0, ...).
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configuration the library deliberately does not handle (e.g. ell1 as the
// concave regularizer, more than one constraint in the solve path).
class UnsupportedConfiguration : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when a ball surrogate degenerates to radius zero, which can only
// happen when an active constraint has a vanishing gradient.
class ConstraintQualificationViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Generated data failed a structural check (rank deficiency, empty Slater
// region, nontriviality violation).
class InvalidInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative routine ran out of its iteration budget. Carries the last
// root bracket when raised by the subproblem solvers.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what, double bracket_lo = 0.0,
                            double bracket_hi = 0.0)
      : std::runtime_error(what), bracket_lo(bracket_lo), bracket_hi(bracket_hi) {}

  double bracket_lo;
  double bracket_hi;
};

// The backtracking loop hit its iteration cap. Kept distinct so the outer
// loop can report it as a solve status while genuine subproblem failures
// still propagate.
class InnerLoopExhausted : public NumericalFailure {
 public:
  using NumericalFailure::NumericalFailure;
};

}  // namespace scpls
