#pragma once

#include "dcboost/core.hpp"
#include "dcboost/io.hpp"
#include "dcboost/problems.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dcboost::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsageError = 2 };

struct StartSpec {
    /// Explicit start points override sampling when non-empty.
    std::vector<Vector> points;
    std::size_t count = 0;
    double lo = -10.0;
    double hi = 10.0;
    std::uint64_t seed = 0;
};

struct RunSpec {
    std::string problem = "ex2";
    ProblemParams params;
    /// dca, nmbdca, bdca or inmbdca.
    std::string solver = "inmbdca";
    SolverConfig config;
    StartSpec starts;
    std::string out_dir = ".";
    /// Also write phi_<i>.csv and, for 2-D problems, path_<i>.csv.
    bool plot_data = false;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned jobs = 0;
};

/// "random-sep(5,7)" -> ("random-sep", {5, 7}); other names pass through.
std::pair<std::string, ProblemParams> parse_problem_name(const std::string& name, ProblemParams params = {});

/// Applies a flat key/value document on top of `base`. Keys: problem, solver,
/// the SolverConfig keys, starts.count, starts.box ([lo, hi]), starts.seed,
/// starts.points ([[...], ...]), out, plot_data, jobs, dim, seed.
RunSpec runspec_from_json(const Json& flat, RunSpec base = {});

/// The config the named solver actually runs with.
SolverConfig effective_config(const std::string& solver, SolverConfig config);

/// Explicit points, or `count` draws uniform in [lo, hi]^dim.
std::vector<Vector> resolve_starts(const StartSpec& starts, Eigen::Index dim);

/// Runs one start with the named solver. `seed` drives the inexact oracles.
Trace run_solver(const std::string& solver, const DcProblem& problem, const SolverConfig& config, const Vector& x0,
                 std::uint64_t seed);

/// Writes trace_<i>.jsonl per start and summary.csv into spec.out_dir.
int cmd_run(const RunSpec& spec, std::ostream& out, std::ostream& err);

struct CheckLine {
    std::string condition;
    double worst_slack = 0.0;
    std::optional<std::size_t> worst_k;
};

/// Worst slack of every replayed inequality over one trace.
std::vector<CheckLine> check_trace(const LoadedTrace& loaded);

int cmd_check(const std::vector<std::string>& paths, std::ostream& out, std::ostream& err);

int cmd_complexity(const std::string& path, std::optional<double> phibar, std::ostream& out, std::ostream& err);

/// One-line JSON error record.
std::string error_record(const std::string& kind, const std::string& message, std::optional<std::size_t> start = {});

} // namespace dcboost::cli
