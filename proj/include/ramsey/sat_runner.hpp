#pragma once

#include "ramsey/canonical.hpp"
#include "ramsey/cnf.hpp"
#include "ramsey/tournament.hpp"

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fcntl.h>
#include <sys/wait.h>
#include <unistd.h>

namespace ramsey {

/// Environment variable naming the default solver executable.
inline constexpr const char *solver_env_var = "RAMSEY_SOLVER";

struct SolverConfig {
  std::string solver;                      // executable path; empty means $RAMSEY_SOLVER
  std::optional<double> timeout_seconds;   // nullopt = unlimited
  int workers = 1;
  std::filesystem::path work_dir;          // instance files and logs; empty = temp dir
  std::vector<std::string> extra_args;     // passed before the CNF path

  auto resolved_solver() const -> std::string {
    if (!solver.empty())
      return solver;
    if (const char *env = std::getenv(solver_env_var))
      return env;
    return {};
  }

  auto validate() const -> void {
    if (workers < 1)
      throw Error(ErrorKind::InvalidArgument, "worker count must be at least 1");
    if (timeout_seconds && *timeout_seconds <= 0)
      throw Error(ErrorKind::InvalidArgument, "timeout must be positive");
  }
};

enum class SolveStatus { Sat, Unsat, Unknown };

inline auto to_string(SolveStatus s) -> std::string {
  switch (s) {
  case SolveStatus::Sat: return "SAT";
  case SolveStatus::Unsat: return "UNSAT";
  case SolveStatus::Unknown: return "UNKNOWN";
  }
  return "?";
}

struct SolverOutcome {
  SolveStatus status = SolveStatus::Unknown;
  std::vector<bool> model; // 1-based; populated for Sat only
  double wall_time = 0.0;  // seconds
  std::string detail;      // why the status is Unknown, if it is
  std::filesystem::path log_path;
};

namespace detail {

inline auto unique_stem() -> std::string {
  static std::atomic<unsigned> counter{0};
  return "ramsey-" + std::to_string(::getpid()) + "-" + std::to_string(counter.fetch_add(1));
}

struct ParsedOutput {
  std::optional<SolveStatus> status;
  std::vector<int> values;
  bool values_terminated = false;
};

inline auto parse_solver_output(std::istream &in) -> ParsedOutput {
  ParsedOutput out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("s ", 0) == 0) {
      if (line.find("UNSATISFIABLE") != std::string::npos)
        out.status = SolveStatus::Unsat;
      else if (line.find("SATISFIABLE") != std::string::npos)
        out.status = SolveStatus::Sat;
      else if (line.find("UNKNOWN") != std::string::npos)
        out.status = SolveStatus::Unknown;
    } else if (line.rfind("v ", 0) == 0 || line == "v") {
      std::istringstream ls(line.substr(1));
      long long lit = 0;
      while (ls >> lit) {
        if (lit == 0)
          out.values_terminated = true;
        else
          out.values.push_back(static_cast<int>(lit));
      }
    }
  }
  return out;
}

// Runs argv with stdout+stderr appended to log. Returns the exit status
// (or -1 when killed on timeout).
inline auto run_process(const std::vector<std::string> &argv, const std::filesystem::path &log,
                        std::optional<double> timeout, bool &timed_out) -> int {
  timed_out = false;
  const int fd = ::open(log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
  if (fd < 0)
    throw Error(ErrorKind::InvalidArgument, "cannot open log " + log.string());
  std::vector<char *> args;
  for (const auto &a : argv)
    args.push_back(const_cast<char *>(a.c_str()));
  args.push_back(nullptr);

  const pid_t pid = ::fork();
  if (pid < 0) {
    ::close(fd);
    throw Error(ErrorKind::SolverCrashed, "fork failed");
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    ::dup2(fd, STDOUT_FILENO);
    ::dup2(fd, STDERR_FILENO);
    ::close(fd);
    ::execvp(args[0], args.data());
    ::_exit(127);
  }
  ::close(fd);
  ::setpgid(pid, pid);

  const auto start = std::chrono::steady_clock::now();
  int status = 0;
  auto pause = std::chrono::microseconds(200);
  for (;;) {
    const pid_t r = ::waitpid(pid, &status, WNOHANG);
    if (r == pid)
      break;
    if (r < 0)
      throw Error(ErrorKind::SolverCrashed, "waitpid failed");
    if (timeout && std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() > *timeout) {
      ::kill(-pid, SIGKILL);
      ::kill(pid, SIGKILL);
      ::waitpid(pid, &status, 0);
      timed_out = true;
      return -1;
    }
    std::this_thread::sleep_for(pause);
    pause = std::min(pause * 2, std::chrono::microseconds(20000));
  }
  if (WIFEXITED(status))
    return WEXITSTATUS(status);
  return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
}

} // namespace detail

/// Runs the configured external solver on `f`.
///
/// Status comes from the "s ..." line (exit codes 10/20 as fallback); the
/// model comes from "v" lines and is checked against the formula. Throws
/// SolverMissing / SolverCrashed; a timeout yields Unknown.
inline auto solve(const CnfFormula &f, const SolverConfig &cfg,
                  const std::filesystem::path &log_path = {}) -> SolverOutcome {
  cfg.validate();
  const auto solver = cfg.resolved_solver();
  if (solver.empty())
    throw Error(ErrorKind::SolverMissing, "no solver given (use --solver or $" + std::string(solver_env_var) + ")");
  if (solver.find('/') != std::string::npos && !std::filesystem::exists(solver))
    throw Error(ErrorKind::SolverMissing, "solver not found: " + solver);

  const auto dir = cfg.work_dir.empty() ? std::filesystem::temp_directory_path() : cfg.work_dir;
  std::filesystem::create_directories(dir);
  const auto stem = detail::unique_stem();
  const auto cnf_path = dir / (stem + ".cnf");
  const auto log = log_path.empty() ? dir / (stem + ".log") : log_path;
  {
    std::ofstream out(cnf_path);
    out << emit_dimacs(f);
  }

  std::vector<std::string> argv{solver};
  argv.insert(argv.end(), cfg.extra_args.begin(), cfg.extra_args.end());
  argv.push_back(cnf_path.string());

  const auto start = std::chrono::steady_clock::now();
  bool timed_out = false;
  const int code = detail::run_process(argv, log, cfg.timeout_seconds, timed_out);
  SolverOutcome outcome;
  outcome.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  outcome.log_path = log;
  std::filesystem::remove(cnf_path);

  {
    std::ofstream trailer(log, std::ios::app);
    trailer << "c wall_time " << outcome.wall_time << "\n";
  }
  if (timed_out) {
    outcome.detail = "timeout";
    return outcome;
  }
  if (code == 127)
    throw Error(ErrorKind::SolverMissing, "could not execute " + solver);

  std::ifstream in(log);
  const auto parsed = detail::parse_solver_output(in);
  auto status = parsed.status;
  if (!status && code == 10)
    status = SolveStatus::Sat;
  if (!status && code == 20)
    status = SolveStatus::Unsat;
  if (!status) {
    if (code != 0)
      throw Error(ErrorKind::SolverCrashed, "exit code " + std::to_string(code) + " without a status line (log: " + log.string() + ")");
    outcome.detail = "no status line";
    return outcome;
  }
  outcome.status = *status;
  if (*status == SolveStatus::Unknown) {
    outcome.detail = "solver reported UNKNOWN";
    return outcome;
  }
  if (*status == SolveStatus::Sat) {
    outcome.model.assign(static_cast<std::size_t>(f.var_count) + 1, false);
    for (int lit : parsed.values)
      if (std::abs(lit) <= f.var_count)
        outcome.model[std::abs(lit)] = lit > 0;
    if (!f.satisfied_by(outcome.model))
      throw Error(ErrorKind::SolverCrashed, "reported model does not satisfy the formula");
  }
  return outcome;
}

/// Reads the tournament off the edge variables. When the varmap records the
/// forbidden k, the result is re-checked with has_tt_k.
inline auto decode_model(const SolverOutcome &outcome, const VarMap &varmap, int n) -> Tournament {
  if (outcome.status != SolveStatus::Sat)
    throw Error(ErrorKind::NotSat, "outcome is " + to_string(outcome.status));
  if (n != varmap.n || static_cast<int>(outcome.model.size()) <= varmap.edge_count())
    throw Error(ErrorKind::InvalidArgument, "model does not match the variable map");
  std::vector<std::uint64_t> rows(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (outcome.model[varmap.edge_var(i, j)])
        rows[i] |= std::uint64_t{1} << j;
      else
        rows[j] |= std::uint64_t{1} << i;
    }
  auto t = Tournament::from_rows(n, rows);
  if (varmap.forbidden_k > 0 && has_tt_k(t, varmap.forbidden_k))
    throw Error(ErrorKind::InvariantViolation,
                "solver model contains TT_" + std::to_string(varmap.forbidden_k));
  return t;
}

struct Enumeration {
  std::vector<Tournament> classes; // one representative per isomorphism class
  std::size_t labelled_models = 0;
  bool exhausted = false; // solver proved no further labelled models exist
};

/// Repeatedly solves, blocking each labelled model on its edge variables,
/// until Unsat or `limit` labelled models; keeps one tournament per
/// isomorphism class.
inline auto enumerate_models(const CnfFormula &f, const SolverConfig &cfg,
                             std::optional<std::size_t> limit = std::nullopt) -> Enumeration {
  if (limit && *limit == 0)
    throw Error(ErrorKind::InvalidArgument, "limit must be at least 1");
  Enumeration result;
  std::set<CanonicalForm> seen;
  CnfFormula work = f;
  for (;;) {
    if (limit && result.labelled_models >= *limit)
      break;
    const auto outcome = solve(work, cfg);
    std::filesystem::remove(outcome.log_path);
    if (outcome.status == SolveStatus::Unsat) {
      result.exhausted = true;
      break;
    }
    if (outcome.status != SolveStatus::Sat)
      throw Error(ErrorKind::SolverCrashed, "enumeration interrupted: " + outcome.detail);
    auto t = decode_model(outcome, f.varmap, f.varmap.n);
    ++result.labelled_models;
    Clause block;
    for (int var = 1; var <= f.varmap.edge_count(); ++var)
      block.push_back(outcome.model[var] ? -var : var);
    work.clauses.push_back(std::move(block));
    if (seen.insert(canonical_form(t)).second)
      result.classes.push_back(std::move(t));
  }
  return result;
}

/// Solves instances concurrently on `cfg.workers` threads, one solver
/// process each. Results keep input order; logs are written to
/// work_dir/instance-<i>.log. Failures become Unknown with the error text.
inline auto solve_batch(const std::vector<CnfFormula> &instances, const SolverConfig &cfg)
    -> std::vector<SolverOutcome> {
  cfg.validate();
  std::vector<SolverOutcome> results(instances.size());
  if (instances.empty())
    return results;
  const auto dir = cfg.work_dir.empty() ? std::filesystem::temp_directory_path() / detail::unique_stem() : cfg.work_dir;
  std::filesystem::create_directories(dir);
  SolverConfig local = cfg;
  local.work_dir = dir;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < instances.size(); i = next.fetch_add(1)) {
      const auto log = dir / ("instance-" + std::to_string(i) + ".log");
      try {
        results[i] = solve(instances[i], local, log);
      } catch (const Error &e) {
        results[i].status = SolveStatus::Unknown;
        results[i].detail = e.what();
        results[i].log_path = log;
        std::ofstream(log, std::ios::app) << "c error " << e.what() << "\n";
      }
    }
  };
  const auto count = std::min<std::size_t>(static_cast<std::size_t>(cfg.workers), instances.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < count; ++w)
      pool.emplace_back(worker);
  }
  return results;
}

} // namespace ramsey
