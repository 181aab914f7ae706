// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#pragma once

#include <filesystem>
#include <utility>

#include "scpls/cs_models.hpp"
#include "scpls/solver.hpp"

namespace scpls {

enum class Algo { scp_ls, scp, both };

const char* algo_name(Algo algo);
std::optional<Algo> algo_from_name(const std::string& name);

struct ExperimentConfig {
  GenerateOptions gen;
  Algo algo = Algo::scp_ls;
  SolverConfig solver;
  std::filesystem::path output_dir;
};

struct RunSummary {
  SolveStatus status = SolveStatus::max_outer;
  long iterations = 0;
  double wall_seconds = 0.0;
  double final_F = 0.0;
  double recovery_rel_error = 0.0;
  std::optional<double> fitted_Q;
  double fitted_r2 = 0.0;
  double max_multiplier = 0.0;
  int max_inner_count = 0;
};

/// Generates the instance, runs one solver and writes trace.csv, errors.csv,
/// the MB01 instance/solution files and a key=value summary into output_dir.
RunSummary run_experiment(const ExperimentConfig& config);

/// Runs both solvers on the identical instance and start point, one
/// subdirectory each, plus a side-by-side summary at the top level.
std::pair<RunSummary, RunSummary> compare_solvers(const ExperimentConfig& config);

// trace.csv column order: t,F,step_norm,g_value,lambda,Lf,Lg,inner_count,
// stationarity,elapsed_s. errors.csv: t,err. Reals carry 17 significant
// digits so parsing reproduces the in-memory values exactly.
void write_trace_csv(const std::filesystem::path& path, const std::vector<IterateRecord>& trace);
std::vector<IterateRecord> read_trace_csv(const std::filesystem::path& path);
void write_errors_csv(const std::filesystem::path& path, const std::vector<double>& errors);

void write_summary(const std::filesystem::path& path, const ExperimentConfig& config,
                   const CsInstance& instance, const RunSummary& summary);

/// Errors |x^t - x_final| over the stored iterates.
std::vector<double> error_curve(const SolveResult& result);

/// 0 on convergence, 2 on an iteration cap, 1 otherwise.
int exit_code_for(SolveStatus status);

}  // namespace scpls
