// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#include "scpls/cs_models.hpp"

#include <Eigen/Dense>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <cstring>
#include <filesystem>

#include "oracles.hpp"
#include "scpls/mb01.hpp"
#include "scpls/rng.hpp"

using namespace scpls;
using namespace scpls::testing;

TEST_CASE("paper-scale dimensions") {
  const GenerateOptions opts = scaled_options(5);
  CHECK(opts.q == 3600);
  CHECK(opts.n == 12800);
  CHECK(opts.s0 == 400);
}

TEST_CASE("generation is deterministic and structurally sound") {
  GenerateOptions opts;  // desk preset: q=72, n=256, s0=8
  opts.seed = 1;
  const CsInstance a = generate_instance(opts);
  const CsInstance b = generate_instance(opts);

  CHECK(a.A.rows() == 72);
  CHECK(a.A.cols() == 256);
  CHECK(std::memcmp(a.A.data(), b.A.data(), sizeof(double) * 72 * 256) == 0);
  CHECK(std::memcmp(a.b.data(), b.b.data(), sizeof(double) * 72) == 0);
  CHECK(std::memcmp(a.x_orig.data(), b.x_orig.data(), sizeof(double) * 256) == 0);
  CHECK(a.delta == b.delta);

  int support = 0;
  for (Eigen::Index j = 0; j < a.x_orig.size(); ++j)
    if (a.x_orig[j] != 0.0) ++support;
  CHECK(support == 8);

  for (Eigen::Index c = 0; c < a.A.cols(); ++c)
    CHECK(a.A.col(c).norm() == Catch::Approx(1.0).margin(1e-12));

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(a.A);
  CHECK(cod.rank() == 72);

  // The origin stays infeasible: delta < loss at zero.
  CHECK(a.delta > 0.0);
  CHECK(a.delta < 0.5 * a.b.squaredNorm());

  GenerateOptions other = opts;
  other.seed = 2;
  const CsInstance c = generate_instance(other);
  CHECK(std::memcmp(a.A.data(), c.A.data(), sizeof(double) * 72 * 256) != 0);
}

TEST_CASE("lorentzian generation pins gamma and delta") {
  GenerateOptions opts;
  opts.loss = Loss::lorentzian;
  opts.seed = 4;
  const CsInstance inst = generate_instance(opts);
  CHECK(inst.gamma == 0.02);
  CHECK(inst.delta < lorentzian_norm(inst.b, inst.gamma));
  CHECK(inst.delta > 0.0);
}

TEST_CASE("squared residual constraint: values, gradient, modulus") {
  Matrix A(1, 1);
  A << 1.0;
  Vector b(1);
  b << 0.0;
  const ConstraintFunction g = sq_l2_constraint(A, b, 1.0);

  Vector x(1);
  x << 2.0;
  CHECK(g.value(x) == 1.0);          // 0.5*4 - 1
  CHECK(g.gradient(x)[0] == 2.0);
  CHECK(*g.lipschitz_grad == Catch::Approx(1.0).margin(1e-9));

  GenerateOptions opts;
  opts.q = 16;
  opts.n = 40;
  opts.s0 = 4;
  opts.seed = 6;
  const CsInstance inst = generate_instance(opts);
  const ConstraintFunction gd = sq_l2_constraint(inst.A, inst.b, inst.delta);
  const Vector x0 = min_norm_init(inst.A, inst.b);
  CHECK(gd.value(x0) == Catch::Approx(-inst.delta).margin(1e-12));
  CHECK(gd.gradient(x0).norm() <= 1e-10);
}

TEST_CASE("lorentzian constraint: scalar gradient and zero residual") {
  const double gamma = 0.02;
  Matrix A(1, 1);
  A << 1.0;
  Vector b(1);
  b << 0.0;
  const ConstraintFunction g = lorentzian_constraint(A, b, 1.0, gamma);

  Vector x(1);
  x << gamma;  // d = 2*gamma / (2*gamma^2) = 1/gamma
  CHECK(g.gradient(x)[0] == Catch::Approx(1.0 / gamma).epsilon(1e-12));
  CHECK(*g.lipschitz_grad == Catch::Approx(2.0 / (gamma * gamma)).epsilon(1e-9));

  Vector zero(1);
  zero << 0.0;
  CHECK(g.value(zero) == -1.0);
}

TEST_CASE("logistic and poisson losses compose with Ax") {
  const int q = 10, n = 24;
  Rng rng(31);
  Matrix A(q, n);
  for (int r = 0; r < q; ++r)
    for (int c = 0; c < n; ++c) A(r, c) = rng.gaussian();
  Vector labels(q), counts(q);
  for (int i = 0; i < q; ++i) {
    labels[i] = rng.uniform01() < 0.5 ? -1.0 : 1.0;
    counts[i] = std::floor(4.0 * rng.uniform01());
  }

  const double delta = 1.5;
  const ConstraintFunction logistic = logistic_constraint(A, labels, delta);
  const ConstraintFunction poisson = poisson_constraint(A, counts, delta);

  const Vector zero = Vector::Zero(n);
  CHECK(logistic.value(zero) == Catch::Approx(q * std::log(2.0) - delta).epsilon(1e-14));
  CHECK(poisson.value(zero) == Catch::Approx(q - delta).epsilon(1e-14));
  CHECK_FALSE(poisson.lipschitz_grad.has_value());

  for (int probe = 0; probe < 10; ++probe) {
    Vector x(n);
    for (Eigen::Index j = 0; j < n; ++j) x[j] = 0.5 * rng.gaussian();
    for (const ConstraintFunction* g : {&logistic, &poisson}) {
      const Vector grad = g->gradient(x);
      const Vector fd = fd_gradient(g->value, x);
      CHECK((grad - fd).norm() <= 1e-6 * std::max(1.0, grad.norm()));
    }
  }

  // Overflow-safe evaluation far from the origin.
  const Vector far = Vector::Constant(n, 50.0);
  CHECK(std::isfinite(logistic.value(far)));
}

TEST_CASE("minimum-norm initialization") {
  Matrix A(1, 2);
  A << 1.0, 0.0;
  Vector b(1);
  b << 2.0;
  const Vector x = min_norm_init(A, b);
  CHECK(x[0] == Catch::Approx(2.0).margin(1e-14));
  CHECK(x[1] == 0.0);

  // Orthonormal rows: the pseudoinverse is the transpose.
  Matrix Q(2, 3);
  Q << 1.0, 0.0, 0.0, 0.0, 1.0, 0.0;
  Vector c(2);
  c << 3.0, -4.0;
  const Vector xq = min_norm_init(Q, c);
  CHECK((xq - Q.transpose() * c).norm() <= 1e-14);

  Matrix rank_deficient(2, 2);
  rank_deficient << 1.0, 1.0, 1.0, 1.0;
  Vector rb(2);
  rb << 1.0, 1.0;
  CHECK_THROWS_AS(min_norm_init(rank_deficient, rb), InvalidInstance);

  GenerateOptions opts;
  opts.q = 20;
  opts.n = 50;
  opts.s0 = 5;
  opts.seed = 8;
  const CsInstance inst = generate_instance(opts);
  const Vector x0 = min_norm_init(inst.A, inst.b);
  CHECK((inst.A * x0 - inst.b).norm() <= 1e-8 * inst.b.norm());
}

TEST_CASE("power iteration matches a dense eigensolve") {
  Rng rng(32);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix A(20, 44);
    for (int r = 0; r < 20; ++r)
      for (int c = 0; c < 44; ++c) A(r, c) = rng.gaussian();
    const double estimate = power_lambda_max(A);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(A.transpose() * A);
    const double exact = eig.eigenvalues().maxCoeff();
    CHECK(std::abs(estimate - exact) <= 1e-6 * exact);
  }
}

TEST_CASE("lorentzian gradient obeys its sampled modulus") {
  const double gamma = 0.02;
  const double modulus = 2.0 / (gamma * gamma);
  const int q = 12;
  Rng rng(33);
  const auto grad = [gamma](const Vector& z) {
    Vector d(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i)
      d[i] = 2.0 * z[i] / (gamma * gamma + z[i] * z[i]);
    return d;
  };
  for (int pair = 0; pair < 1000; ++pair) {
    Vector z1(q), z2(q);
    for (int i = 0; i < q; ++i) {
      z1[i] = 0.05 * rng.gaussian();
      z2[i] = 0.05 * rng.gaussian();
    }
    const double lhs = (grad(z1) - grad(z2)).norm();
    CHECK(lhs <= modulus * (z1 - z2).norm() * (1.0 + 1e-8));
  }
}

TEST_CASE("explicit delta losses: validation and Slater initialization") {
  GenerateOptions opts;
  opts.q = 20;
  opts.n = 48;
  opts.s0 = 4;
  opts.seed = 14;
  opts.loss = Loss::logistic;
  CHECK_THROWS_AS(generate_instance(opts), InvalidArgument);  // delta missing

  opts.delta = 0.5 * opts.q * std::log(2.0);
  const CsInstance logistic = generate_instance(opts);
  const DcProblem lp = make_problem(logistic);
  const Vector lx0 = feasible_init(logistic);
  CHECK(lp.constraints[0].value(lx0) < 0.0);

  opts.loss = Loss::poisson;
  opts.delta = 0.9 * opts.q;
  const CsInstance poisson = generate_instance(opts);
  const DcProblem pp = make_problem(poisson);
  const Vector px0 = feasible_init(poisson);
  CHECK(pp.constraints[0].value(px0) < 0.0);

  opts.delta = 2.0 * opts.q;  // origin would be feasible
  CHECK_THROWS_AS(generate_instance(opts), InvalidInstance);
}

TEST_CASE("mb01 round trip is exact") {
  const auto dir = std::filesystem::temp_directory_path() / "scpls_mb01_test";
  std::filesystem::create_directories(dir);

  Rng rng(34);
  Matrix m(7, 5);
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 5; ++c) m(r, c) = std::pow(10.0, -30.0 + 60.0 * rng.uniform01()) *
                                          (rng.uniform01() < 0.5 ? -1.0 : 1.0);
  m(0, 0) = 0.0;
  m(1, 1) = -0.0;

  write_mb01(dir / "m.mb01", m);
  const Matrix back = read_mb01(dir / "m.mb01");
  REQUIRE(back.rows() == m.rows());
  REQUIRE(back.cols() == m.cols());
  CHECK(std::memcmp(m.data(), back.data(), sizeof(double) * 35) == 0);

  Vector v(9);
  for (int i = 0; i < 9; ++i) v[i] = rng.gaussian();
  write_mb01_vector(dir / "v.mb01", v);
  const Vector vback = read_mb01_vector(dir / "v.mb01");
  CHECK(std::memcmp(v.data(), vback.data(), sizeof(double) * 9) == 0);

  CHECK_THROWS(read_mb01(dir / "missing.mb01"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("key=value files round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "scpls_kv_test";
  std::filesystem::create_directories(dir);
  write_kv(dir / "meta.txt", {{"loss", "sq_l2"}, {"delta", format_double(0.25)}});
  const auto kv = read_kv(dir / "meta.txt");
  CHECK(kv.at("loss") == "sq_l2");
  CHECK(kv.at("delta") == format_double(0.25));
  std::filesystem::remove_all(dir);
}

TEST_CASE("generator rejects inconsistent shapes") {
  GenerateOptions opts;
  opts.s0 = 100;
  opts.q = 50;
  CHECK_THROWS_AS(generate_instance(opts), InvalidArgument);
  CHECK_THROWS_AS(scaled_options(0), InvalidArgument);
}
