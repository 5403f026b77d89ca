#include "dcboost/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dcboost {

DcProblem make_problem(std::string name, ConvexExpr g, ConvexExpr h, Eigen::Index dim,
                       std::optional<double> phi_lower_bound, std::vector<Vector> known_critical_points) {
    if (dim <= 0) throw InputError("problem dimension must be positive");
    for (const auto* part : {&g, &h}) {
        if (auto d = part->dim(); d && *d != dim) {
            throw InputError("component dimension " + std::to_string(*d) + " does not match problem dimension " +
                             std::to_string(dim));
        }
    }
    for (const auto& p : known_critical_points) {
        if (p.size() != dim) throw InputError("critical point has the wrong dimension");
    }
    const double sigma = std::min(modulus(g), modulus(h));
    if (!(sigma > 0.0)) {
        throw UnsupportedProblem("both DC components must be strongly convex (shared modulus is " +
                                 std::to_string(sigma) + ")");
    }
    return DcProblem{std::move(g), std::move(h), sigma, dim, std::move(name), phi_lower_bound,
                     std::move(known_critical_points)};
}

double phi(const DcProblem& problem, const Vector& x) {
    if (x.size() != problem.dim) {
        throw InputError("dimension mismatch: problem '" + problem.name + "' has dimension " +
                         std::to_string(problem.dim) + ", point has " + std::to_string(x.size()));
    }
    return value(problem.g, x) - value(problem.h, x);
}

double EpsSchedule::at(std::size_t k) const {
    switch (kind) {
    case Kind::Zero:
        return 0.0;
    case Kind::Geometric:
        return eps0 * std::pow(q, static_cast<double>(k));
    case Kind::Harmonic2: {
        const double kp1 = static_cast<double>(k) + 1.0;
        return eps0 / (kp1 * kp1);
    }
    }
    return 0.0;
}

namespace {

template <class T>
std::string str(T v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

void validate_nu(const NuStrategySpec& spec, std::vector<Violation>& out) {
    auto bad = [&out](std::string field, std::string msg) { out.push_back({std::move(field), std::move(msg)}); };
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, nu::A1Direct>) {
                if (!(s.delta_min >= 0.0 && s.delta_min < 1.0)) bad("nu.delta_min", "delta_min ∉ [0,1)");
                if (!(s.nu0 >= 0.0)) bad("nu.nu0", "nu0 < 0");
                if (!(s.fraction >= 0.0 && s.fraction <= 1.0)) bad("nu.fraction", "fraction ∉ [0,1]");
            } else if constexpr (std::is_same_v<T, nu::ZhangHager>) {
                if (!(s.eta_min >= 0.0 && s.eta_min <= s.eta_max && s.eta_max < 1.0)) {
                    bad("nu.eta", "requires 0 <= eta_min <= eta_max < 1");
                }
                if (!(s.c0_offset > 0.0)) bad("nu.c0_offset", "c0_offset <= 0");
            } else if constexpr (std::is_same_v<T, nu::Grippo>) {
                if (s.M <= 0) bad("nu.M", "M must be a positive integer");
            } else if constexpr (std::is_same_v<T, nu::Ratio>) {
                if (!(s.omega > 0.0)) bad("nu.omega", "omega <= 0");
            }
        },
        spec);
}

} // namespace

std::vector<Violation> validate(const DcProblem& problem, const SolverConfig& config) {
    std::vector<Violation> out;
    auto bad = [&out](std::string field, std::string msg) { out.push_back({std::move(field), std::move(msg)}); };

    if (!(config.rho > 0.0)) bad("rho", "rho <= 0");
    if (!(config.beta > 0.0 && config.beta < 1.0)) bad("beta", "beta ∉ (0,1)");
    if (!(config.theta >= 0.0)) bad("theta", "theta < 0");
    if (!(config.theta < problem.sigma / 2.0)) {
        bad("theta", "theta ≥ sigma/2 (theta=" + str(config.theta) + ", sigma=" + str(problem.sigma) + ")");
    }
    if (config.lambda_bar_rule.kind == LambdaBarRule::Kind::Constant && !(config.lambda_bar_rule.value >= 0.0)) {
        bad("lambda_bar", "lambda_bar < 0");
    }
    const auto& eps = config.eps_schedule;
    if (eps.kind != EpsSchedule::Kind::Zero && !(eps.eps0 >= 0.0)) bad("eps.eps0", "eps0 < 0");
    if (eps.kind == EpsSchedule::Kind::Geometric && !(eps.q > 0.0 && eps.q < 1.0)) bad("eps.q", "q ∉ (0,1)");
    validate_nu(config.nu_strategy, out);
    if (!(config.stop_step_tol > 0.0)) bad("stop_step_tol", "stop_step_tol <= 0");
    if (!(config.d_zero_tol > 0.0)) bad("d_zero_tol", "d_zero_tol <= 0");
    if (config.max_backtracks <= 0) bad("max_backtracks", "max_backtracks must be positive");
    return out;
}

std::string to_string(Termination t) {
    switch (t) {
    case Termination::StepTol:
        return "StepTol";
    case Termination::DZero:
        return "DZero";
    case Termination::MaxIter:
        return "MaxIter";
    }
    return "?";
}

Termination termination_from_string(const std::string& s) {
    if (s == "StepTol") return Termination::StepTol;
    if (s == "DZero") return Termination::DZero;
    if (s == "MaxIter") return Termination::MaxIter;
    throw ParseError("unknown termination '" + s + "'");
}

std::string to_string(InexactMode m) {
    switch (m) {
    case InexactMode::InnerSolver:
        return "InnerSolver";
    case InexactMode::PerturbedExact:
        return "PerturbedExact";
    case InexactMode::Exact:
        return "Exact";
    }
    return "?";
}

InexactMode inexact_mode_from_string(const std::string& s) {
    if (s == "InnerSolver") return InexactMode::InnerSolver;
    if (s == "PerturbedExact") return InexactMode::PerturbedExact;
    if (s == "Exact") return InexactMode::Exact;
    throw ParseError("unknown inexact mode '" + s + "'");
}

std::string nu_kind_name(const NuStrategySpec& spec) {
    static constexpr const char* names[] = {"Zero", "A1Direct", "ZhangHager", "Grippo", "Ratio"};
    return names[spec.index()];
}

} // namespace dcboost
