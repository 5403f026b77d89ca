#pragma once

#include "dcboost/common.hpp"
#include "dcboost/nu_spec.hpp"
#include "dcboost/oracles.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dcboost {

/// phi = g - h with both components strongly convex with the shared modulus sigma.
struct DcProblem {
    ConvexExpr g;
    ConvexExpr h;
    double sigma = 0.0;
    Eigen::Index dim = 0;
    std::string name;
    std::optional<double> phi_lower_bound;
    std::vector<Vector> known_critical_points;
};

/// Builds a problem with sigma = min(modulus(g), modulus(h)).
/// Throws UnsupportedProblem when sigma is not positive and InputError on a
/// dimension conflict.
DcProblem make_problem(std::string name, ConvexExpr g, ConvexExpr h, Eigen::Index dim,
                       std::optional<double> phi_lower_bound = std::nullopt,
                       std::vector<Vector> known_critical_points = {});

double phi(const DcProblem& problem, const Vector& x);

struct EpsSchedule {
    enum class Kind { Zero, Geometric, Harmonic2 };

    Kind kind = Kind::Zero;
    double eps0 = 0.0;
    double q = 0.5;

    static EpsSchedule zero() { return {}; }
    static EpsSchedule geometric(double eps0, double q) { return {Kind::Geometric, eps0, q}; }
    static EpsSchedule harmonic2(double eps0) { return {Kind::Harmonic2, eps0, 0.5}; }

    double at(std::size_t k) const;
};

struct LambdaBarRule {
    enum class Kind { Constant, ZeroBoost };

    Kind kind = Kind::Constant;
    double value = 1.0;

    static LambdaBarRule constant(double v) { return {Kind::Constant, v}; }
    static LambdaBarRule zero_boost() { return {Kind::ZeroBoost, 0.0}; }

    double at(std::size_t) const { return kind == Kind::ZeroBoost ? 0.0 : value; }
};

enum class InexactMode { InnerSolver, PerturbedExact, Exact };

/// What a solver does when a certified inequality fails during a run.
enum class ViolationPolicy { Abort, Warn };

struct SolverConfig {
    double rho = 0.6;
    double beta = 0.1;
    double theta = 0.2;
    LambdaBarRule lambda_bar_rule = LambdaBarRule::constant(1.0);
    EpsSchedule eps_schedule;
    NuStrategySpec nu_strategy = nu::Ratio{};
    double stop_step_tol = 1e-5;
    double d_zero_tol = 1e-12;
    std::size_t max_iter = 10000;
    int max_backtracks = 60;
    InexactMode inexact_mode = InexactMode::InnerSolver;
#ifdef NDEBUG
    ViolationPolicy violation_policy = ViolationPolicy::Warn;
#else
    ViolationPolicy violation_policy = ViolationPolicy::Abort;
#endif
};

struct Violation {
    std::string field;
    std::string message;
};

/// Checks every SolverConfig range against the problem. Empty means valid.
std::vector<Violation> validate(const DcProblem& problem, const SolverConfig& config);

struct IterationRecord {
    std::size_t k = 0;
    Vector x;
    double phi_x = 0.0;
    double eps_k = 0.0;
    double eps_certified = 0.0;
    Vector w;
    Vector y;
    Vector xi;
    double d_norm = 0.0;
    double inexact_lhs = 0.0;
    double inexact_rhs = 0.0;
    double nu_k = 0.0;
    double lambda_bar = 0.0;
    double lambda_k = 0.0;
    int n_backtracks = 0;
    double phi_y = 0.0;
    double phi_next = 0.0;
    /// Only populated when nu_k > 0.
    std::optional<double> tau_hat;
    std::optional<double> tau;

    Vector d() const { return y - x; }
    /// x^{k+1} = y^k + lambda_k d^k.
    Vector next_x() const { return y + lambda_k * (y - x); }
};

enum class Termination { StepTol, DZero, MaxIter };

std::string to_string(Termination t);
Termination termination_from_string(const std::string& s);
std::string to_string(InexactMode m);
InexactMode inexact_mode_from_string(const std::string& s);

struct Trace {
    std::string problem_name;
    std::string solver;
    SolverConfig config;
    double sigma = 0.0;
    Vector x0;
    std::vector<IterationRecord> records;
    Vector final_x;
    double final_phi = 0.0;
    Termination termination = Termination::MaxIter;
};

} // namespace dcboost
