#include "doctest.h"
#include "support.hpp"

#include "dcboost/cli.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dcboost;
using namespace dcboost::testing;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("dcboost_cli_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

cli::RunSpec spec_for(const std::string& problem, const std::string& solver, const fs::path& out) {
    cli::RunSpec spec;
    spec.problem = problem;
    spec.solver = solver;
    spec.out_dir = out.string();
    spec.jobs = 2;
    return spec;
}

} // namespace

TEST_CASE("run: 100 seeded starts on ex1 all end near critical points") {
    const fs::path dir = scratch("ex1_100");
    cli::RunSpec spec = spec_for("ex1", "inmbdca", dir);
    spec.starts.count = 100;
    spec.starts.seed = 42;
    std::ostringstream out, err;
    REQUIRE(cli::cmd_run(spec, out, err) == cli::kOk);
    CHECK(err.str().empty());
    const auto rows = read_csv(dir / "summary.csv");
    REQUIRE(rows.size() == 101);
    CHECK(rows[0] == std::vector<std::string>{"start", "final_x", "final_phi", "iterations", "total_backtracks",
                                              "termination", "final_residual"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        REQUIRE(rows[i].size() == 7);
        CHECK(std::stod(rows[i][6]) <= 1e-3);
        CHECK(fs::exists(dir / ("trace_" + std::to_string(i - 1) + ".jsonl")));
    }
}

TEST_CASE("run: single explicit start on ex2") {
    const fs::path dir = scratch("ex2_single");
    cli::RunSpec spec = spec_for("ex2", "inmbdca", dir);
    spec.starts.points = {vec({-4.4615, -9.0766})};
    spec.plot_data = true;
    std::ostringstream out, err;
    REQUIRE(cli::cmd_run(spec, out, err) == cli::kOk);
    const auto rows = read_csv(dir / "summary.csv");
    REQUIRE(rows.size() == 2);
    std::stringstream xs(rows[1][1]);
    double x1 = 0, x2 = 0;
    xs >> x1 >> x2;
    CHECK(std::hypot(x1 - 1.5, x2) <= 1e-3);
    CHECK(fs::exists(dir / "phi_0.csv"));
    CHECK(fs::exists(dir / "path_0.csv"));
    CHECK(read_csv(dir / "path_0.csv")[0] == std::vector<std::string>{"x1", "x2"});
}

TEST_CASE("run: no starts writes only the header") {
    const fs::path dir = scratch("empty");
    cli::RunSpec spec = spec_for("ex2", "inmbdca", dir);
    std::ostringstream out, err;
    CHECK(cli::cmd_run(spec, out, err) == cli::kOk);
    CHECK(read_csv(dir / "summary.csv").size() == 1);
}

TEST_CASE("run: configuration errors exit 2 with a JSON record") {
    const fs::path dir = scratch("bad");
    cli::RunSpec spec = spec_for("ex2", "inmbdca", dir);
    spec.config.theta = 0.9;
    std::ostringstream out, err;
    CHECK(cli::cmd_run(spec, out, err) == cli::kUsageError);
    const Json rec = Json::parse(err.str());
    CHECK(rec["error"] == "config");

    cli::RunSpec unknown = spec_for("nope", "inmbdca", dir);
    std::ostringstream out2, err2;
    CHECK(cli::cmd_run(unknown, out2, err2) == cli::kUsageError);

    cli::RunSpec wrong_dim = spec_for("ex2", "inmbdca", dir);
    wrong_dim.starts.points = {vec({1, 2, 3})};
    std::ostringstream out3, err3;
    CHECK(cli::cmd_run(wrong_dim, out3, err3) == cli::kUsageError);
}

TEST_CASE("run: identical specs give byte-identical summaries") {
    const fs::path a = scratch("det_a");
    const fs::path b = scratch("det_b");
    cli::RunSpec spec = spec_for("random-sep(4,9)", "inmbdca", a);
    spec.problem = "random-sep";
    spec.params = {4, 9};
    spec.starts.count = 12;
    spec.starts.seed = 5;
    spec.config.inexact_mode = InexactMode::PerturbedExact;
    spec.config.eps_schedule = EpsSchedule::geometric(1e-3, 0.5);
    std::ostringstream out, err;
    REQUIRE(cli::cmd_run(spec, out, err) == cli::kOk);
    spec.out_dir = b.string();
    spec.jobs = 1;
    REQUIRE(cli::cmd_run(spec, out, err) == cli::kOk);
    CHECK(slurp(a / "summary.csv") == slurp(b / "summary.csv"));
    CHECK(slurp(a / "trace_7.jsonl") == slurp(b / "trace_7.jsonl"));
}

TEST_CASE("check passes on run output for every problem and solver") {
    for (const std::string problem : {"ex1", "ex2", "random-sep"}) {
        for (const std::string solver : {"dca", "nmbdca", "bdca", "inmbdca"}) {
            const fs::path dir = scratch("check_" + problem + "_" + solver);
            cli::RunSpec spec = spec_for(problem, solver, dir);
            spec.starts.count = 5;
            spec.starts.seed = 1;
            std::ostringstream out, err;
            REQUIRE(cli::cmd_run(spec, out, err) == cli::kOk);
            std::vector<std::string> paths;
            for (int i = 0; i < 5; ++i) paths.push_back((dir / ("trace_" + std::to_string(i) + ".jsonl")).string());
            std::ostringstream cout_, cerr_;
            CHECK_MESSAGE(cli::cmd_check(paths, cout_, cerr_) == cli::kOk, std::string(problem + "/" + solver + ": " + cerr_.str()));
        }
    }
}

TEST_CASE("check reports a corrupted linesearch value") {
    const fs::path dir = scratch("corrupt");
    cli::RunSpec spec = spec_for("ex2", "inmbdca", dir);
    spec.starts.points = {vec({-4.4615, -9.0766})};
    std::ostringstream out, err;
    REQUIRE(cli::cmd_run(spec, out, err) == cli::kOk);

    std::ifstream in(dir / "trace_0.jsonl");
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    Json rec = Json::parse(lines[3]);
    rec["phi_next"] = rec["phi_next"].get<double>() + 1.0;
    lines[3] = rec.dump();
    const fs::path bad = dir / "bad.jsonl";
    std::ofstream o(bad);
    for (const auto& l : lines) o << l << '\n';
    o.close();

    std::ostringstream cout_, cerr_;
    CHECK(cli::cmd_check({bad.string()}, cout_, cerr_) == cli::kCheckFailed);
    CHECK(cerr_.str().find("linesearch condition") != std::string::npos);
    CHECK(cerr_.str().find("k=2") != std::string::npos);
}

TEST_CASE("check and complexity reject an empty file") {
    const fs::path dir = scratch("emptyfile");
    fs::create_directories(dir);
    const fs::path empty = dir / "empty.jsonl";
    std::ofstream(empty).close();
    std::ostringstream out, err;
    CHECK(cli::cmd_check({empty.string()}, out, err) == cli::kUsageError);
    CHECK(Json::parse(err.str())["error"] == "parse");
    std::ostringstream out2, err2;
    CHECK(cli::cmd_complexity(empty.string(), std::nullopt, out2, err2) == cli::kUsageError);
}

TEST_CASE("complexity on run output") {
    const fs::path dir = scratch("complexity");
    cli::RunSpec spec = spec_for("ex2", "inmbdca", dir);
    spec.starts.points = {vec({-4.4615, -9.0766})};
    std::ostringstream out, err;
    REQUIRE(cli::cmd_run(spec, out, err) == cli::kOk);
    const std::string trace = (dir / "trace_0.jsonl").string();

    std::ostringstream o1, e1;
    CHECK(cli::cmd_complexity(trace, -1.125, o1, e1) == cli::kOk);
    CHECK(o1.str().find("all_prefixes_hold true") != std::string::npos);
    std::ostringstream o2, e2;
    CHECK(cli::cmd_complexity(trace, 0.0, o2, e2) == cli::kUsageError);
    std::ostringstream o3, e3;
    CHECK(cli::cmd_complexity(trace, std::nullopt, o3, e3) == cli::kOk);
    CHECK(o3.str().find("problem lower bound") != std::string::npos);

    const fs::path one = scratch("complexity_one");
    cli::RunSpec single = spec_for("ex1", "dca", one);
    single.starts.points = {vec({1, 1})};
    single.config.max_iter = 1;
    REQUIRE(cli::cmd_run(single, out, err) == cli::kOk);
    std::ostringstream o4, e4;
    CHECK(cli::cmd_complexity((one / "trace_0.jsonl").string(), -2.0, o4, e4) == cli::kOk);
    CHECK(o4.str().rfind("N 1\n", 0) == 0);
}

TEST_CASE("run configuration parsing") {
    const auto [name, params] = cli::parse_problem_name("random-sep(5,7)");
    CHECK(name == "random-sep");
    CHECK(params.dim == 5);
    CHECK(params.seed == 7);
    CHECK(cli::parse_problem_name("ex1").first == "ex1");

    const Json doc = Json::parse(R"j({"problem": "random-sep(3,2)", "solver": "bdca", "rho": 0.5,
        "nu.kind": "ZhangHager", "starts.count": 4, "starts.box": [-1, 2], "starts.seed": 9, "out": "x",
        "plot_data": true, "jobs": 3})j");
    const cli::RunSpec spec = cli::runspec_from_json(doc);
    CHECK(spec.problem == "random-sep");
    CHECK(spec.params.dim == 3);
    CHECK(spec.solver == "bdca");
    CHECK(spec.config.rho == 0.5);
    CHECK(std::holds_alternative<nu::ZhangHager>(spec.config.nu_strategy));
    CHECK(spec.starts.count == 4);
    CHECK(spec.starts.lo == -1.0);
    CHECK(spec.starts.hi == 2.0);
    CHECK(spec.starts.seed == 9);
    CHECK(spec.plot_data);
    CHECK(spec.jobs == 3);

    const auto starts = cli::resolve_starts(spec.starts, 3);
    REQUIRE(starts.size() == 4);
    for (const auto& x : starts) CHECK(((x.array() >= -1.0).all() && (x.array() <= 2.0).all()));
    CHECK(cli::resolve_starts(spec.starts, 3)[2] == starts[2]);

    const Json pts_doc = Json::parse(R"({"starts.points": [[1, 2], [3, 4]], "starts.count": 10})");
    const cli::RunSpec pts = cli::runspec_from_json(pts_doc);
    CHECK(cli::resolve_starts(pts.starts, 2).size() == 2);

    for (const char* bad : {R"({"solver": "newton"})", R"({"starts.box": [2, 1]})", R"({"starts.count": -1})"}) {
        const Json doc_bad = Json::parse(bad);
        CHECK_THROWS_AS(cli::runspec_from_json(doc_bad), ParseError);
    }
    CHECK(std::holds_alternative<nu::Zero>(cli::effective_config("bdca", SolverConfig{}).nu_strategy));
}

TEST_CASE("error records are single-line JSON") {
    const std::string rec = cli::error_record("violation", "bad\nthing", 3);
    CHECK(rec.find('\n') == std::string::npos);
    const Json j = Json::parse(rec);
    CHECK(j["start"] == 3);
    CHECK(j["message"] == "bad\nthing");
}
