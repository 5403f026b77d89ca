#include "dcboost/cli.hpp"

#include "dcboost/diagnostics.hpp"
#include "dcboost/subproblem.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <thread>

namespace dcboost::cli {

namespace {

constexpr double kCheckTol = 1e-9;

struct StartResult {
    std::optional<Trace> trace;
    std::string error_kind;
    std::string error;
};

std::string join(const Vector& v, char sep) {
    std::string s;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) s += sep;
        s += format_double(v[i]);
    }
    return s;
}

void write_plot_data(const std::filesystem::path& dir, std::size_t i, const Trace& trace) {
    std::ofstream phi_csv(dir / ("phi_" + std::to_string(i) + ".csv"));
    phi_csv << "k,phi\n";
    for (const auto& r : trace.records) phi_csv << r.k << ',' << format_double(r.phi_x) << '\n';
    phi_csv << trace.records.size() << ',' << format_double(trace.final_phi) << '\n';
    if (trace.x0.size() != 2) return;
    std::ofstream path_csv(dir / ("path_" + std::to_string(i) + ".csv"));
    path_csv << "x1,x2\n";
    for (const auto& r : trace.records) path_csv << join(r.x, ',') << '\n';
    path_csv << join(trace.final_x, ',') << '\n';
}

class SlackTable {
public:
    void add(const std::string& condition, double slack, std::optional<std::size_t> k) {
        auto it = std::find_if(lines_.begin(), lines_.end(), [&](const CheckLine& l) { return l.condition == condition; });
        if (it == lines_.end()) {
            lines_.push_back({condition, slack, k});
            return;
        }
        if (slack < it->worst_slack) {
            it->worst_slack = slack;
            it->worst_k = k;
        }
    }

    void declare(const std::string& condition) {
        lines_.push_back({condition, std::numeric_limits<double>::infinity(), std::nullopt});
    }

    std::vector<CheckLine> take() { return std::move(lines_); }

private:
    std::vector<CheckLine> lines_;
};

} // namespace

std::vector<CheckLine> check_trace(const LoadedTrace& loaded) {
    const Trace& trace = loaded.trace;
    const DcProblem& problem = loaded.problem;
    const SolverConfig& config = trace.config;
    const char* kReconstruction = "reconstruction x+ = y + lambda d";
    const char* kObjective = "recorded objective values";
    const char* kDescentY = "descent phi(y) <= phi(x) - (sigma/2 - theta)|d|^2 + eps";
    const char* kDescentNext = "descent phi(x+) <= phi(x) - (sigma/2 - theta + rho lambda^2)|d|^2 + nu + eps";
    const char* kLinesearch = "linesearch condition phi(y + lambda d) <= phi(y) - rho lambda^2 |d|^2 + nu";
    const char* kInexact = "inexactness |w - xi| <= theta |y - x|";
    const char* kMembership = "membership xi in dg(y)";
    const char* kEps = "eps certificate w in d_eps h(x)";
    const char* kTau = "tau guarantee";
    const char* kNu = "nu >= 0";

    SlackTable table;
    for (const char* c : {kReconstruction, kObjective, kDescentY, kDescentNext, kLinesearch, kInexact, kMembership,
                          kEps, kTau, kNu}) {
        table.declare(c);
    }

    const auto descent = check_descent(trace, problem.sigma, config.theta);
    for (std::size_t i = 0; i < trace.records.size(); ++i) {
        const IterationRecord& r = trace.records[i];
        const Vector d = r.d();
        const double d_sq = d.squaredNorm();
        const Vector x_next = r.next_x();

        const Vector& recorded_next = i + 1 < trace.records.size() ? trace.records[i + 1].x : trace.final_x;
        table.add(kReconstruction, 0.0 - (recorded_next - x_next).norm(), r.k);

        const double phi_x = phi(problem, r.x);
        const double phi_y = phi(problem, r.y);
        const double phi_next = phi(problem, x_next);
        const double obj_err = std::max({std::abs(phi_x - r.phi_x) / (1.0 + std::abs(phi_x)),
                                         std::abs(phi_y - r.phi_y) / (1.0 + std::abs(phi_y)),
                                         std::abs(phi_next - r.phi_next) / (1.0 + std::abs(phi_next))});
        table.add(kObjective, 0.0 - obj_err, r.k);

        table.add(kDescentY, descent[i].slack_y, r.k);
        table.add(kDescentNext, descent[i].slack_next, r.k);
        table.add(kLinesearch, r.phi_y - config.rho * r.lambda_k * r.lambda_k * d_sq + r.nu_k - r.phi_next, r.k);

        const double lhs = (r.w - r.xi).norm();
        const double rhs = config.theta * d.norm();
        table.add(kInexact, rhs - lhs, r.k);
        table.add(kMembership, 0.0 - subdiff_box(problem.g, r.y).distance(r.xi), r.k);
        table.add(kEps, 0.0 - eps_subdiff_box(problem.h, r.x, r.eps_k).distance(r.w), r.k);
        table.add(kNu, r.nu_k, r.k);

        if (r.tau) {
            const double tau = *r.tau;
            const double accept = phi_y - config.rho * tau * tau * d_sq + r.nu_k - phi(problem, r.y + tau * d);
            table.add(kTau, std::min(accept, 1.0 - tau), r.k);
        }
    }
    return table.take();
}

int cmd_check(const std::vector<std::string>& paths, std::ostream& out, std::ostream& err) {
    if (paths.empty()) {
        err << error_record("usage", "check: no trace files given") << '\n';
        return kUsageError;
    }
    bool failed = false;
    for (const auto& path : paths) {
        std::ifstream in(path);
        if (!in) {
            err << error_record("io", "cannot open '" + path + "'") << '\n';
            return kUsageError;
        }
        LoadedTrace loaded;
        try {
            loaded = read_trace_jsonl(in);
        } catch (const std::exception& e) {
            err << error_record("parse", path + ": " + e.what()) << '\n';
            return kUsageError;
        }
        out << path << ": " << loaded.trace.solver << " on " << loaded.trace.problem_name << ", "
            << loaded.trace.records.size() << " records\n";
        for (const auto& line : check_trace(loaded)) {
            out << "  " << std::left << std::setw(80) << line.condition << ' ';
            if (!line.worst_k) {
                out << "n/a\n";
                continue;
            }
            out << "worst slack " << format_double(line.worst_slack) << " at k=" << *line.worst_k << '\n';
            if (line.worst_slack < -kCheckTol) {
                failed = true;
                err << error_record("violation", path + ": " + line.condition + " violated at k=" +
                                                     std::to_string(*line.worst_k) + " (slack " +
                                                     format_double(line.worst_slack) + ")")
                    << '\n';
            }
        }
    }
    return failed ? kCheckFailed : kOk;
}

int cmd_complexity(const std::string& path, std::optional<double> phibar, std::ostream& out, std::ostream& err) {
    std::ifstream in(path);
    if (!in) {
        err << error_record("io", "cannot open '" + path + "'") << '\n';
        return kUsageError;
    }
    LoadedTrace loaded;
    try {
        loaded = read_trace_jsonl(in);
    } catch (const std::exception& e) {
        err << error_record("parse", path + ": " + e.what()) << '\n';
        return kUsageError;
    }
    const Trace& trace = loaded.trace;
    std::string source = "--phibar";
    if (!phibar) {
        if (loaded.problem.phi_lower_bound) {
            phibar = loaded.problem.phi_lower_bound;
            source = "problem lower bound";
        } else {
            double lowest = trace.final_phi;
            for (const auto& r : trace.records) lowest = std::min(lowest, r.phi_x);
            phibar = lowest - 1e-6;
            source = "heuristic: lowest recorded phi - 1e-6";
        }
    }
    ComplexityReport rep;
    try {
        rep = complexity_report(trace, *phibar, loaded.problem.sigma, trace.config.theta);
    } catch (const InputError& e) {
        err << error_record("input", e.what()) << '\n';
        return kUsageError;
    }
    auto opt = [](const auto& v) { return v ? format_double(static_cast<double>(*v)) : std::string("none"); };
    out << "N " << rep.N << '\n'
        << "phi_bar " << format_double(*phibar) << " (" << source << ")\n"
        << "min_d_norm " << format_double(rep.min_d_norm) << '\n'
        << "bound_A2 " << format_double(rep.bound_A2) << '\n'
        << "all_prefixes_hold " << (rep.all_prefixes_hold ? "true" : "false") << '\n'
        << "first_violating_prefix " << opt(rep.first_violating_prefix) << '\n'
        << "xi " << format_double(rep.xi) << '\n'
        << "k0 " << opt(rep.k0) << '\n'
        << "bound_A3 " << opt(rep.bound_A3) << '\n'
        << "bound_A3_one_minus_xi " << opt(rep.bound_A3_one_minus_xi) << '\n'
        << "liminf_proxy " << format_double(rep.liminf_proxy) << '\n'
        << "note: sums over the recorded iterations only; the bound with the infinite sums is larger\n";
    if (!rep.all_prefixes_hold) {
        err << error_record("violation", "complexity bound fails at prefix N=" + opt(rep.first_violating_prefix))
            << '\n';
        return kCheckFailed;
    }
    return kOk;
}

int cmd_run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
    DcProblem problem;
    SolverConfig config;
    std::vector<Vector> starts;
    try {
        problem = ProblemRegistry::instance().get(spec.problem, spec.params);
        config = effective_config(spec.solver, spec.config);
        config.violation_policy = ViolationPolicy::Abort;
        if (auto violations = validate(problem, config); !violations.empty()) {
            std::string msg;
            for (const auto& v : violations) msg += (msg.empty() ? "" : "; ") + v.field + ": " + v.message;
            err << error_record("config", msg) << '\n';
            return kUsageError;
        }
        starts = resolve_starts(spec.starts, problem.dim);
        for (const auto& x0 : starts) {
            if (x0.size() != problem.dim) {
                throw InputError("start point of dimension " + std::to_string(x0.size()) + " for a problem of dimension " +
                                 std::to_string(problem.dim));
            }
        }
    } catch (const std::exception& e) {
        err << error_record("config", e.what()) << '\n';
        return kUsageError;
    }

    const std::filesystem::path dir(spec.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        err << error_record("io", "cannot create '" + spec.out_dir + "': " + ec.message()) << '\n';
        return kUsageError;
    }

    std::vector<StartResult> results(starts.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < starts.size(); i = next++) {
            StartResult& res = results[i];
            try {
                Trace t = run_solver(spec.solver, problem, config, starts[i], spec.starts.seed + i);
                std::ofstream trace_out(dir / ("trace_" + std::to_string(i) + ".jsonl"));
                write_trace_jsonl(trace_out, t, problem);
                if (spec.plot_data) write_plot_data(dir, i, t);
                res.trace = std::move(t);
            } catch (const InvariantViolation& e) {
                res.error_kind = "invariant_violation";
                res.error = e.what();
            } catch (const std::exception& e) {
                res.error_kind = "error";
                res.error = e.what();
            }
        }
    };
    unsigned n_workers = spec.jobs ? spec.jobs : std::max(1u, std::thread::hardware_concurrency());
    n_workers = static_cast<unsigned>(std::min<std::size_t>(n_workers, starts.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < n_workers; ++t) pool.emplace_back(worker);
    if (n_workers > 0) worker();
    for (auto& t : pool) t.join();

    std::ofstream summary(dir / "summary.csv");
    summary << "start,final_x,final_phi,iterations,total_backtracks,termination,final_residual\n";
    std::size_t failed = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const StartResult& res = results[i];
        if (!res.trace) {
            ++failed;
            err << error_record(res.error_kind, res.error, i) << '\n';
            continue;
        }
        const Trace& t = *res.trace;
        int backtracks = 0;
        for (const auto& r : t.records) backtracks += r.n_backtracks;
        const double residual = criticality_residual(problem, t.final_x, terminal_eps(problem, t));
        summary << i << ',' << join(t.final_x, ' ') << ',' << format_double(t.final_phi) << ',' << t.records.size()
                << ',' << backtracks << ',' << to_string(t.termination) << ',' << format_double(residual) << '\n';
    }
    out << spec.solver << " on " << problem.name << ": " << starts.size() << " starts, " << failed << " failed; "
        << (dir / "summary.csv").string() << '\n';
    return failed ? kCheckFailed : kOk;
}

} // namespace dcboost::cli
