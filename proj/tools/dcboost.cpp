#include "dcboost/cli.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using dcboost::Json;
namespace cli = dcboost::cli;

namespace {

template <class T>
void put(Json& flat, const char* key, const std::optional<T>& v) {
    if (v) flat[key] = *v;
}

Json parse_value(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception&) {
        return Json(text);
    }
}

dcboost::Vector parse_point(const std::string& text) {
    std::vector<double> coords;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) coords.push_back(std::stod(item));
    dcboost::Vector v(static_cast<Eigen::Index>(coords.size()));
    for (std::size_t i = 0; i < coords.size(); ++i) v[static_cast<Eigen::Index>(i)] = coords[i];
    return v;
}

struct RunFlags {
    std::string config_path;
    std::optional<std::string> problem, solver, lambda_bar, eps_kind, nu_kind, inexact_mode, out;
    std::optional<long> dim, max_iter, max_backtracks, starts_count, jobs;
    std::optional<std::uint64_t> seed, starts_seed;
    std::optional<double> rho, beta, theta, eps0, eps_q, stop_step_tol, d_zero_tol;
    std::vector<double> starts_box;
    std::vector<std::string> starts;
    std::vector<std::string> sets;
    bool plot_data = false;
};

Json flags_to_json(const RunFlags& f) {
    Json flat = Json::object();
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw dcboost::ParseError("cannot open config '" + f.config_path + "'");
        try {
            flat = Json::parse(in);
        } catch (const Json::exception& e) {
            throw dcboost::ParseError("config '" + f.config_path + "': " + e.what());
        }
        if (!flat.is_object()) throw dcboost::ParseError("config '" + f.config_path + "' must be a JSON object");
    }
    put(flat, "problem", f.problem);
    put(flat, "solver", f.solver);
    put(flat, "dim", f.dim);
    put(flat, "seed", f.seed);
    put(flat, "rho", f.rho);
    put(flat, "beta", f.beta);
    put(flat, "theta", f.theta);
    if (f.lambda_bar) flat["lambda_bar"] = parse_value(*f.lambda_bar);
    put(flat, "eps.kind", f.eps_kind);
    put(flat, "eps.eps0", f.eps0);
    put(flat, "eps.q", f.eps_q);
    put(flat, "nu.kind", f.nu_kind);
    put(flat, "stop_step_tol", f.stop_step_tol);
    put(flat, "d_zero_tol", f.d_zero_tol);
    put(flat, "max_iter", f.max_iter);
    put(flat, "max_backtracks", f.max_backtracks);
    put(flat, "inexact_mode", f.inexact_mode);
    put(flat, "starts.count", f.starts_count);
    put(flat, "starts.seed", f.starts_seed);
    if (!f.starts_box.empty()) flat["starts.box"] = f.starts_box;
    if (!f.starts.empty()) {
        Json pts = Json::array();
        for (const auto& s : f.starts) {
            const dcboost::Vector v = parse_point(s);
            pts.push_back(std::vector<double>(v.data(), v.data() + v.size()));
        }
        flat["starts.points"] = pts;
    }
    put(flat, "out", f.out);
    if (f.plot_data) flat["plot_data"] = true;
    put(flat, "jobs", f.jobs);
    for (const auto& kv : f.sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw dcboost::ParseError("--set expects key=value, got '" + kv + "'");
        flat[kv.substr(0, eq)] = parse_value(kv.substr(eq + 1));
    }
    return flat;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boosted DC algorithms: batch runs, trace checks and complexity reports"};
    app.require_subcommand(1);

    RunFlags rf;
    CLI::App* run = app.add_subcommand("run", "Run a solver from one or more starts");
    run->add_option("--config", rf.config_path, "Flat JSON run spec; flags override its keys");
    run->add_option("--problem", rf.problem, "ex1, ex2, random-sep or random-sep(dim,seed)");
    run->add_option("--dim", rf.dim, "Dimension of random-sep");
    run->add_option("--seed", rf.seed, "Seed of random-sep");
    run->add_option("--solver", rf.solver, "dca, nmbdca, bdca or inmbdca");
    run->add_option("--rho", rf.rho);
    run->add_option("--beta", rf.beta);
    run->add_option("--theta", rf.theta);
    run->add_option("--lambda-bar", rf.lambda_bar, "Number or ZeroBoost");
    run->add_option("--eps-kind", rf.eps_kind, "Zero, Geometric or Harmonic2");
    run->add_option("--eps0", rf.eps0);
    run->add_option("--eps-q", rf.eps_q);
    run->add_option("--nu-kind", rf.nu_kind, "Zero, A1Direct, ZhangHager, Grippo or Ratio");
    run->add_option("--stop-step-tol", rf.stop_step_tol);
    run->add_option("--d-zero-tol", rf.d_zero_tol);
    run->add_option("--max-iter", rf.max_iter);
    run->add_option("--max-backtracks", rf.max_backtracks);
    run->add_option("--inexact-mode", rf.inexact_mode, "InnerSolver, PerturbedExact or Exact");
    run->add_option("--starts-count", rf.starts_count);
    run->add_option("--starts-box", rf.starts_box, "lo hi")->expected(2);
    run->add_option("--starts-seed", rf.starts_seed);
    run->add_option("--start", rf.starts, "Explicit start point x1,x2,... (repeatable)");
    run->add_option("--set", rf.sets, "Any run-spec key, e.g. nu.omega=0.02 (repeatable)");
    run->add_option("--out", rf.out, "Output directory");
    run->add_flag("--plot-data", rf.plot_data, "Also write phi_<i>.csv and path_<i>.csv");
    run->add_option("--jobs", rf.jobs, "Worker threads (0 = hardware concurrency)");

    std::vector<std::string> check_paths;
    CLI::App* check = app.add_subcommand("check", "Replay every certified inequality on trace files");
    check->add_option("traces", check_paths, "JSONL trace files")->required();

    std::string complexity_path;
    std::optional<double> phibar;
    CLI::App* complexity = app.add_subcommand("complexity", "Evaluate the complexity bound on a trace");
    complexity->add_option("trace", complexity_path, "JSONL trace file")->required();
    complexity->add_option("--phibar", phibar, "Lower bound of phi (default: the problem's)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kUsageError;
    }

    if (*run) {
        cli::RunSpec spec;
        try {
            spec = cli::runspec_from_json(flags_to_json(rf));
        } catch (const std::exception& e) {
            std::cerr << cli::error_record("config", e.what()) << '\n';
            return cli::kUsageError;
        }
        return cli::cmd_run(spec, std::cout, std::cerr);
    }
    if (*check) return cli::cmd_check(check_paths, std::cout, std::cerr);
    return cli::cmd_complexity(complexity_path, phibar, std::cout, std::cerr);
}
