// scpls - sequential convex programming solver with moving-ball constraints
// Copyright 2026 scpls Contributors
// Licensed under Apache 2.0

#include "scpls/experiment.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "scpls/mb01.hpp"

namespace scpls {
namespace {

const char* status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::max_outer: return "max_outer";
    case SolveStatus::numerical_failure: return "numerical_failure";
  }
  return "unknown";
}

void write_instance_files(const std::filesystem::path& dir, const CsInstance& inst) {
  write_mb01(dir / "instance_A.mb01", inst.A);
  write_mb01_vector(dir / "instance_b.mb01", inst.b);
  write_mb01_vector(dir / "instance_x_orig.mb01", inst.x_orig);
  write_kv(dir / "instance_meta.txt",
           {{"delta", format_double(inst.delta)},
            {"gamma", format_double(inst.gamma)},
            {"mu", format_double(inst.mu)},
            {"loss", loss_name(inst.loss)},
            {"seed", std::to_string(inst.seed)},
            {"s0", std::to_string(inst.s0)}});
}

struct RunArtifacts {
  RunSummary summary;
  SolveResult result;
};

RunArtifacts run_one(const ExperimentConfig& config, const CsInstance& inst,
                     const DcProblem& problem, const Vector& x0, Algo algo,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  const auto start = std::chrono::steady_clock::now();
  RunArtifacts arts;
  arts.result = algo == Algo::scp_ls ? run_scp_ls(problem, x0, config.solver)
                                     : run_scp(problem, x0, config.solver);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  RunSummary& s = arts.summary;
  s.status = arts.result.status;
  s.iterations = static_cast<long>(arts.result.trace.size());
  s.wall_seconds = std::round(wall * 1000.0) / 1000.0;  // millisecond resolution
  s.final_F = eval_F(problem, arts.result.x_final).value;
  s.recovery_rel_error = (arts.result.x_final - inst.x_orig).norm() / inst.x_orig.norm();
  if (arts.result.fitted_rate) {
    s.fitted_Q = arts.result.fitted_rate->Q;
    s.fitted_r2 = arts.result.fitted_rate->r2;
  }
  for (const IterateRecord& rec : arts.result.trace) {
    s.max_multiplier = std::max(s.max_multiplier, rec.multipliers.lpNorm<Eigen::Infinity>());
    s.max_inner_count = std::max(s.max_inner_count, rec.inner_count);
  }

  ExperimentConfig named = config;
  named.algo = algo;
  write_trace_csv(dir / "trace.csv", arts.result.trace);
  write_errors_csv(dir / "errors.csv", error_curve(arts.result));
  write_mb01_vector(dir / "solution.mb01", arts.result.x_final);
  write_summary(dir / "summary.txt", named, inst, s);
  return arts;
}

}  // namespace

const char* algo_name(Algo algo) {
  switch (algo) {
    case Algo::scp_ls: return "scp_ls";
    case Algo::scp: return "scp";
    case Algo::both: return "both";
  }
  return "unknown";
}

std::optional<Algo> algo_from_name(const std::string& name) {
  if (name == "scp_ls") return Algo::scp_ls;
  if (name == "scp") return Algo::scp;
  if (name == "both") return Algo::both;
  return std::nullopt;
}

std::vector<double> error_curve(const SolveResult& result) {
  if (result.iterates.empty())
    throw InvalidArgument("error_curve: run was configured without iterate history");
  std::vector<double> errors;
  errors.reserve(result.iterates.size());
  for (const Vector& x : result.iterates) errors.push_back((x - result.x_final).norm());
  return errors;
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<IterateRecord>& trace) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "t,F,step_norm,g_value,lambda,Lf,Lg,inner_count,stationarity,elapsed_s\n";
  for (const IterateRecord& rec : trace) {
    out << rec.t << ',' << format_double(rec.objective) << ',' << format_double(rec.step_norm)
        << ',' << format_double(rec.g_values[0]) << ',' << format_double(rec.multipliers[0])
        << ',' << format_double(rec.obj_modulus) << ',' << format_double(rec.con_moduli[0]) << ','
        << rec.inner_count << ',' << format_double(rec.stationarity) << ','
        << format_double(rec.elapsed_s) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::vector<IterateRecord> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty trace file: " + path.string());

  std::vector<IterateRecord> trace;
  while (std::getline(in, line)) {
    std::array<std::string, 10> fields;
    std::size_t pos = 0;
    for (int k = 0; k < 10; ++k) {
      const auto comma = line.find(',', pos);
      if (k < 9 && comma == std::string::npos)
        throw std::runtime_error("malformed trace row: " + path.string());
      fields[static_cast<std::size_t>(k)] = line.substr(pos, comma - pos);
      pos = comma + 1;
    }
    IterateRecord rec;
    rec.t = std::strtol(fields[0].c_str(), nullptr, 10);
    rec.objective = std::strtod(fields[1].c_str(), nullptr);
    rec.step_norm = std::strtod(fields[2].c_str(), nullptr);
    rec.g_values = Vector::Constant(1, std::strtod(fields[3].c_str(), nullptr));
    rec.multipliers = Vector::Constant(1, std::strtod(fields[4].c_str(), nullptr));
    rec.obj_modulus = std::strtod(fields[5].c_str(), nullptr);
    rec.con_moduli = Vector::Constant(1, std::strtod(fields[6].c_str(), nullptr));
    rec.inner_count = static_cast<int>(std::strtol(fields[7].c_str(), nullptr, 10));
    rec.stationarity = std::strtod(fields[8].c_str(), nullptr);
    rec.elapsed_s = std::strtod(fields[9].c_str(), nullptr);
    trace.push_back(std::move(rec));
  }
  return trace;
}

void write_errors_csv(const std::filesystem::path& path, const std::vector<double>& errors) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << "t,err\n";
  for (std::size_t t = 0; t < errors.size(); ++t)
    out << t << ',' << format_double(errors[t]) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_summary(const std::filesystem::path& path, const ExperimentConfig& config,
                   const CsInstance& inst, const RunSummary& summary) {
  write_kv(path, {{"model", loss_name(inst.loss)},
                  {"algo", algo_name(config.algo)},
                  {"mu", format_double(inst.mu)},
                  {"q", std::to_string(inst.A.rows())},
                  {"n", std::to_string(inst.A.cols())},
                  {"s0", std::to_string(inst.s0)},
                  {"seed", std::to_string(inst.seed)},
                  {"delta", format_double(inst.delta)},
                  {"gamma", format_double(inst.gamma)},
                  {"status", status_name(summary.status)},
                  {"iterations", std::to_string(summary.iterations)},
                  {"wall_seconds", format_double(summary.wall_seconds)},
                  {"final_F", format_double(summary.final_F)},
                  {"recovery_rel_error", format_double(summary.recovery_rel_error)},
                  {"fitted_Q", summary.fitted_Q ? format_double(*summary.fitted_Q) : "none"},
                  {"fitted_r2", format_double(summary.fitted_r2)},
                  {"max_multiplier", format_double(summary.max_multiplier)},
                  {"max_inner_count", std::to_string(summary.max_inner_count)}});
}

RunSummary run_experiment(const ExperimentConfig& config) {
  if (config.algo == Algo::both)
    throw InvalidArgument("run_experiment: use compare_solvers for algo=both");
  const CsInstance inst = generate_instance(config.gen);
  const DcProblem problem = make_problem(inst);
  const Vector x0 = feasible_init(inst);

  std::filesystem::create_directories(config.output_dir);
  write_instance_files(config.output_dir, inst);
  return run_one(config, inst, problem, x0, config.algo, config.output_dir).summary;
}

std::pair<RunSummary, RunSummary> compare_solvers(const ExperimentConfig& config) {
  if (config.algo != Algo::both)
    throw InvalidArgument("compare_solvers: config.algo must be both");
  const CsInstance inst = generate_instance(config.gen);
  const DcProblem problem = make_problem(inst);
  const Vector x0 = feasible_init(inst);

  std::filesystem::create_directories(config.output_dir);
  write_instance_files(config.output_dir, inst);

  const RunArtifacts ls =
      run_one(config, inst, problem, x0, Algo::scp_ls, config.output_dir / "scp_ls");
  const RunArtifacts fixed =
      run_one(config, inst, problem, x0, Algo::scp, config.output_dir / "scp");

  const auto side = [](const char* prefix, const RunSummary& s,
                       std::vector<std::pair<std::string, std::string>>& kv) {
    const std::string p(prefix);
    kv.emplace_back(p + "status", status_name(s.status));
    kv.emplace_back(p + "iterations", std::to_string(s.iterations));
    kv.emplace_back(p + "wall_seconds", format_double(s.wall_seconds));
    kv.emplace_back(p + "final_F", format_double(s.final_F));
    kv.emplace_back(p + "recovery_rel_error", format_double(s.recovery_rel_error));
    kv.emplace_back(p + "fitted_Q", s.fitted_Q ? format_double(*s.fitted_Q) : "none");
    kv.emplace_back(p + "fitted_r2", format_double(s.fitted_r2));
  };
  std::vector<std::pair<std::string, std::string>> kv = {
      {"model", loss_name(inst.loss)},
      {"mu", format_double(inst.mu)},
      {"q", std::to_string(inst.A.rows())},
      {"n", std::to_string(inst.A.cols())},
      {"s0", std::to_string(inst.s0)},
      {"seed", std::to_string(inst.seed)}};
  side("scp_ls_", ls.summary, kv);
  side("scp_", fixed.summary, kv);
  write_kv(config.output_dir / "summary_compare.txt", kv);

  return {ls.summary, fixed.summary};
}

int exit_code_for(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return 0;
    case SolveStatus::max_outer: return 2;
    case SolveStatus::numerical_failure: return 1;
  }
  return 1;
}

}  // namespace scpls
