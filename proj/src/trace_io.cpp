#include "dcboost/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

namespace dcboost {

namespace {

Json vec_to_json(const Vector& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

Vector vec_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array of numbers");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) throw ParseError(std::string(what) + ": expected an array of numbers");
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

Json opt_to_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

double num(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number()) throw ParseError(std::string("missing numeric field '") + key + "'");
    return it->get<double>();
}

std::optional<double> opt_num(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    if (!it->is_number()) throw ParseError(std::string("field '") + key + "' must be a number or null");
    return it->get<double>();
}

} // namespace

Json expr_to_json(const ConvexExpr& f) {
    Json out;
    std::visit(
        [&out](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, Quadratic>) {
                out = Json{{"quad", node.a}};
            } else if constexpr (std::is_same_v<T, Linear>) {
                out = Json{{"lin", vec_to_json(node.c)}};
            } else if constexpr (std::is_same_v<T, L1>) {
                out = Json{{"l1", node.b}};
            } else {
                Json terms = Json::array();
                for (const auto& t : node.terms) terms.push_back(expr_to_json(t));
                out = Json{{"sum", terms}};
            }
        },
        f.node());
    return out;
}

ConvexExpr expr_from_json(const Json& j) {
    if (!j.is_object() || j.size() != 1) throw ParseError("expression: expected a single-key object");
    const std::string key = j.begin().key();
    const Json& val = j.begin().value();
    try {
        if (key == "quad") return ConvexExpr::quadratic(val.get<double>());
        if (key == "l1") return ConvexExpr::l1(val.get<double>());
        if (key == "lin") return ConvexExpr::linear(vec_from_json(val, "lin"));
        if (key == "sum") {
            if (!val.is_array()) throw ParseError("sum: expected an array");
            std::vector<ConvexExpr> terms;
            for (const auto& t : val) terms.push_back(expr_from_json(t));
            return ConvexExpr::sum(std::move(terms));
        }
    } catch (const Json::exception& e) {
        throw ParseError(std::string("expression '") + key + "': " + e.what());
    } catch (const InputError& e) {
        throw ParseError(std::string("expression '") + key + "': " + e.what());
    }
    throw ParseError("unknown expression atom '" + key + "'");
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Json config_to_json(const SolverConfig& c) {
    Json j;
    j["rho"] = c.rho;
    j["beta"] = c.beta;
    j["theta"] = c.theta;
    if (c.lambda_bar_rule.kind == LambdaBarRule::Kind::ZeroBoost) {
        j["lambda_bar"] = "ZeroBoost";
    } else {
        j["lambda_bar"] = c.lambda_bar_rule.value;
    }
    switch (c.eps_schedule.kind) {
    case EpsSchedule::Kind::Zero:
        j["eps.kind"] = "Zero";
        break;
    case EpsSchedule::Kind::Geometric:
        j["eps.kind"] = "Geometric";
        break;
    case EpsSchedule::Kind::Harmonic2:
        j["eps.kind"] = "Harmonic2";
        break;
    }
    j["eps.eps0"] = c.eps_schedule.eps0;
    j["eps.q"] = c.eps_schedule.q;
    j["nu.kind"] = nu_kind_name(c.nu_strategy);
    std::visit(
        [&j](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, nu::A1Direct>) {
                j["nu.delta_min"] = s.delta_min;
                if (!s.delta_rule) j["nu.delta"] = s.delta_min;
                j["nu.nu0"] = s.nu0;
                j["nu.fraction"] = s.fraction;
            } else if constexpr (std::is_same_v<T, nu::ZhangHager>) {
                j["nu.eta_min"] = s.eta_min;
                j["nu.eta_max"] = s.eta_max;
                j["nu.c0_offset"] = s.c0_offset;
            } else if constexpr (std::is_same_v<T, nu::Grippo>) {
                j["nu.M"] = s.M;
            } else if constexpr (std::is_same_v<T, nu::Ratio>) {
                j["nu.omega"] = s.omega;
            }
        },
        c.nu_strategy);
    j["stop_step_tol"] = c.stop_step_tol;
    j["d_zero_tol"] = c.d_zero_tol;
    j["max_iter"] = c.max_iter;
    j["max_backtracks"] = c.max_backtracks;
    j["inexact_mode"] = to_string(c.inexact_mode);
    j["violation_policy"] = c.violation_policy == ViolationPolicy::Abort ? "Abort" : "Warn";
    return j;
}

SolverConfig config_from_json(const Json& flat, SolverConfig c) {
    if (!flat.is_object()) throw ParseError("config: expected a flat JSON object");
    auto get_num = [&flat](const char* key, auto& target) {
        auto it = flat.find(key);
        if (it == flat.end()) return false;
        if (!it->is_number()) throw ParseError(std::string("config key '") + key + "' must be a number");
        using T = std::decay_t<decltype(target)>;
        if constexpr (std::is_integral_v<T>) {
            const double v = it->get<double>();
            if (v < 0 || v != std::floor(v)) {
                throw ParseError(std::string("config key '") + key + "' must be a non-negative integer");
            }
            target = static_cast<T>(v);
        } else {
            target = it->get<double>();
        }
        return true;
    };
    auto get_str = [&flat](const char* key) -> std::optional<std::string> {
        auto it = flat.find(key);
        if (it == flat.end()) return std::nullopt;
        if (!it->is_string()) throw ParseError(std::string("config key '") + key + "' must be a string");
        return it->get<std::string>();
    };

    get_num("rho", c.rho);
    get_num("beta", c.beta);
    get_num("theta", c.theta);
    if (auto it = flat.find("lambda_bar"); it != flat.end()) {
        if (it->is_string()) {
            if (it->get<std::string>() != "ZeroBoost") throw ParseError("lambda_bar must be a number or \"ZeroBoost\"");
            c.lambda_bar_rule = LambdaBarRule::zero_boost();
        } else if (it->is_number()) {
            c.lambda_bar_rule = LambdaBarRule::constant(it->get<double>());
        } else {
            throw ParseError("lambda_bar must be a number or \"ZeroBoost\"");
        }
    }
    if (auto kind = get_str("eps.kind")) {
        if (*kind == "Zero") {
            c.eps_schedule.kind = EpsSchedule::Kind::Zero;
        } else if (*kind == "Geometric") {
            c.eps_schedule.kind = EpsSchedule::Kind::Geometric;
        } else if (*kind == "Harmonic2") {
            c.eps_schedule.kind = EpsSchedule::Kind::Harmonic2;
        } else {
            throw ParseError("unknown eps.kind '" + *kind + "'");
        }
    }
    get_num("eps.eps0", c.eps_schedule.eps0);
    get_num("eps.q", c.eps_schedule.q);

    if (auto kind = get_str("nu.kind")) {
        if (*kind == "Zero") {
            c.nu_strategy = nu::Zero{};
        } else if (*kind == "A1Direct") {
            c.nu_strategy = nu::A1Direct{};
        } else if (*kind == "ZhangHager") {
            c.nu_strategy = nu::ZhangHager{};
        } else if (*kind == "Grippo") {
            c.nu_strategy = nu::Grippo{};
        } else if (*kind == "Ratio") {
            c.nu_strategy = nu::Ratio{};
        } else {
            throw ParseError("unknown nu.kind '" + *kind + "'");
        }
    }
    std::visit(
        [&](auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, nu::A1Direct>) {
                get_num("nu.delta_min", s.delta_min);
                double delta = 0.0;
                if (get_num("nu.delta", delta)) {
                    s.delta_rule = [delta](std::size_t) { return delta; };
                }
                get_num("nu.nu0", s.nu0);
                get_num("nu.fraction", s.fraction);
            } else if constexpr (std::is_same_v<T, nu::ZhangHager>) {
                get_num("nu.eta_min", s.eta_min);
                get_num("nu.eta_max", s.eta_max);
                double eta = 0.0;
                if (get_num("nu.eta", eta)) {
                    s.eta_rule = [eta](std::size_t) { return eta; };
                }
                get_num("nu.c0_offset", s.c0_offset);
            } else if constexpr (std::is_same_v<T, nu::Grippo>) {
                get_num("nu.M", s.M);
            } else if constexpr (std::is_same_v<T, nu::Ratio>) {
                get_num("nu.omega", s.omega);
            }
        },
        c.nu_strategy);

    get_num("stop_step_tol", c.stop_step_tol);
    get_num("d_zero_tol", c.d_zero_tol);
    get_num("max_iter", c.max_iter);
    get_num("max_backtracks", c.max_backtracks);
    if (auto mode = get_str("inexact_mode")) c.inexact_mode = inexact_mode_from_string(*mode);
    if (auto policy = get_str("violation_policy")) {
        if (*policy == "Abort") {
            c.violation_policy = ViolationPolicy::Abort;
        } else if (*policy == "Warn") {
            c.violation_policy = ViolationPolicy::Warn;
        } else {
            throw ParseError("unknown violation_policy '" + *policy + "'");
        }
    }
    return c;
}

Json record_to_json(const IterationRecord& r) {
    Json j;
    j["k"] = r.k;
    j["x"] = vec_to_json(r.x);
    j["phi_x"] = r.phi_x;
    j["eps_k"] = r.eps_k;
    j["eps_certified"] = r.eps_certified;
    j["w"] = vec_to_json(r.w);
    j["y"] = vec_to_json(r.y);
    j["xi"] = vec_to_json(r.xi);
    j["d_norm"] = r.d_norm;
    j["inexact_lhs"] = r.inexact_lhs;
    j["inexact_rhs"] = r.inexact_rhs;
    j["nu_k"] = r.nu_k;
    j["lambda_bar"] = r.lambda_bar;
    j["lambda_k"] = r.lambda_k;
    j["n_backtracks"] = r.n_backtracks;
    j["phi_y"] = r.phi_y;
    j["phi_next"] = r.phi_next;
    j["tau_hat"] = opt_to_json(r.tau_hat);
    j["tau"] = opt_to_json(r.tau);
    return j;
}

IterationRecord record_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("record: expected an object");
    IterationRecord r;
    const double k = num(j, "k");
    if (k < 0 || k != std::floor(k)) throw ParseError("record: k must be a non-negative integer");
    r.k = static_cast<std::size_t>(k);
    auto vec = [&j](const char* key) {
        auto it = j.find(key);
        if (it == j.end()) throw ParseError(std::string("record: missing field '") + key + "'");
        return vec_from_json(*it, key);
    };
    r.x = vec("x");
    r.phi_x = num(j, "phi_x");
    r.eps_k = num(j, "eps_k");
    r.eps_certified = num(j, "eps_certified");
    r.w = vec("w");
    r.y = vec("y");
    r.xi = vec("xi");
    r.d_norm = num(j, "d_norm");
    r.inexact_lhs = num(j, "inexact_lhs");
    r.inexact_rhs = num(j, "inexact_rhs");
    r.nu_k = num(j, "nu_k");
    r.lambda_bar = num(j, "lambda_bar");
    r.lambda_k = num(j, "lambda_k");
    r.n_backtracks = static_cast<int>(num(j, "n_backtracks"));
    r.phi_y = num(j, "phi_y");
    r.phi_next = num(j, "phi_next");
    r.tau_hat = opt_num(j, "tau_hat");
    r.tau = opt_num(j, "tau");
    return r;
}

void write_trace_jsonl(std::ostream& os, const Trace& trace, const DcProblem& problem) {
    Json header;
    header["problem"] = trace.problem_name;
    header["solver"] = trace.solver;
    header["dim"] = problem.dim;
    header["sigma"] = trace.sigma;
    header["g"] = expr_to_json(problem.g);
    header["h"] = expr_to_json(problem.h);
    header["phi_lower_bound"] = opt_to_json(problem.phi_lower_bound);
    header["config"] = config_to_json(trace.config);
    header["x0"] = vec_to_json(trace.x0);
    os << Json{{"header", header}}.dump() << '\n';
    for (const auto& r : trace.records) os << record_to_json(r).dump() << '\n';
    Json summary;
    summary["final_x"] = vec_to_json(trace.final_x);
    summary["final_phi"] = trace.final_phi;
    summary["termination"] = to_string(trace.termination);
    summary["iterations"] = trace.records.size();
    os << Json{{"summary", summary}}.dump() << '\n';
}

LoadedTrace read_trace_jsonl(std::istream& is) {
    std::string line;
    std::size_t line_no = 0;
    std::optional<Json> header;
    std::optional<Json> summary;
    std::vector<IterationRecord> records;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        Json j;
        try {
            j = Json::parse(line);
        } catch (const Json::exception& e) {
            throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
        }
        if (summary) throw ParseError("line " + std::to_string(line_no) + ": content after the summary line");
        if (j.contains("header")) {
            if (header || !records.empty()) throw ParseError("line " + std::to_string(line_no) + ": misplaced header");
            header = j["header"];
        } else if (j.contains("summary")) {
            summary = j["summary"];
        } else {
            if (!header) throw ParseError("line " + std::to_string(line_no) + ": record before header");
            try {
                records.push_back(record_from_json(j));
            } catch (const ParseError& e) {
                throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
            }
        }
    }
    if (!header) throw ParseError("trace is empty or lacks a header line");
    if (!summary) throw ParseError("trace lacks a summary line");

    try {
        const Json& h = *header;
        const auto dim = static_cast<Eigen::Index>(num(h, "dim"));
        DcProblem problem = make_problem(h.at("problem").get<std::string>(), expr_from_json(h.at("g")),
                                         expr_from_json(h.at("h")), dim, opt_num(h, "phi_lower_bound"));
        Trace trace;
        trace.problem_name = problem.name;
        trace.solver = h.at("solver").get<std::string>();
        trace.sigma = num(h, "sigma");
        trace.config = config_from_json(h.at("config"));
        trace.x0 = vec_from_json(h.at("x0"), "x0");
        trace.records = std::move(records);
        trace.final_x = vec_from_json(summary->at("final_x"), "final_x");
        trace.final_phi = num(*summary, "final_phi");
        trace.termination = termination_from_string(summary->at("termination").get<std::string>());
        for (const auto& r : trace.records) {
            if (r.x.size() != dim || r.y.size() != dim || r.w.size() != dim || r.xi.size() != dim) {
                throw ParseError("record " + std::to_string(r.k) + ": vector dimension does not match the problem");
            }
        }
        return LoadedTrace{std::move(trace), std::move(problem)};
    } catch (const Json::exception& e) {
        throw ParseError(std::string("trace header/summary: ") + e.what());
    } catch (const InputError& e) {
        throw ParseError(std::string("trace header: ") + e.what());
    } catch (const UnsupportedProblem& e) {
        throw ParseError(std::string("trace header: ") + e.what());
    }
}

void write_trace_csv(std::ostream& os, const Trace& trace) {
    os << "k,phi_x,eps_k,d_norm,inexact_lhs,inexact_rhs,nu_k,lambda_k,n_backtracks,phi_y,phi_next,tau_hat,tau\n";
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string(); };
    for (const auto& r : trace.records) {
        os << r.k << ',' << format_double(r.phi_x) << ',' << format_double(r.eps_k) << ','
           << format_double(r.d_norm) << ',' << format_double(r.inexact_lhs) << ','
           << format_double(r.inexact_rhs) << ',' << format_double(r.nu_k) << ',' << format_double(r.lambda_k)
           << ',' << r.n_backtracks << ',' << format_double(r.phi_y) << ',' << format_double(r.phi_next) << ','
           << opt(r.tau_hat) << ',' << opt(r.tau) << '\n';
    }
}

} // namespace dcboost
