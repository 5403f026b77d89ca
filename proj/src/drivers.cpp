#include "dcboost/drivers.hpp"

#include "dcboost/linesearch.hpp"
#include "dcboost/nu.hpp"
#include "dcboost/subproblem.hpp"

#include <iostream>
#include <sstream>

namespace dcboost {

namespace {

class ViolationSink {
public:
    ViolationSink(ViolationPolicy policy, std::string solver) : policy_(policy), solver_(std::move(solver)) {}

    void report(std::size_t k, const std::string& what) const {
        std::ostringstream os;
        os << solver_ << ": " << what << " violated at k=" << k;
        if (policy_ == ViolationPolicy::Abort) throw InvariantViolation(os.str());
        std::cerr << "warning: " << os.str() << '\n';
    }

private:
    ViolationPolicy policy_;
    std::string solver_;
};

void check_record(const DcProblem& problem, const SolverConfig& config, const IterationRecord& rec, const ViolationSink& sink) {
    const double d_sq = rec.d_norm * rec.d_norm;
    const double coeff = problem.sigma / 2.0 - config.theta;
    if (rec.phi_y > rec.phi_x - coeff * d_sq + rec.eps_k + kDescentSlack) {
        sink.report(rec.k, "descent estimate phi(y) <= phi(x) - (sigma/2 - theta)||d||^2 + eps");
    }
    const double with_step = coeff + config.rho * rec.lambda_k * rec.lambda_k;
    if (rec.phi_next > rec.phi_x - with_step * d_sq + rec.nu_k + rec.eps_k + kDescentSlack) {
        sink.report(rec.k, "descent estimate with step size");
    }
    if (rec.inexact_lhs > rec.inexact_rhs + kInexactSlack) {
        sink.report(rec.k, "inexactness condition ||w - xi|| <= theta ||y - x||");
    }
    if (subdiff_box(problem.g, rec.y).distance(rec.xi) > kMembershipTol) {
        sink.report(rec.k, "membership xi in dg(y)");
    }
    if (rec.eps_certified > rec.eps_k) sink.report(rec.k, "eps certificate bound");
    if (rec.phi_next > rec.phi_y - config.rho * rec.lambda_k * rec.lambda_k * d_sq + rec.nu_k + kInexactSlack) {
        sink.report(rec.k, "linesearch condition");
    }
    if (problem.phi_lower_bound && rec.phi_next < *problem.phi_lower_bound - kDescentSlack) {
        sink.report(rec.k, "known lower bound phi >= phi_bar");
    }
}

Trace run_loop(const DcProblem& problem, const SolverConfig& config, const Vector& x0, std::uint64_t seed,
               std::string solver) {
    if (x0.size() != problem.dim) {
        throw InputError("start point has dimension " + std::to_string(x0.size()) + ", problem '" + problem.name +
                         "' has " + std::to_string(problem.dim));
    }
    if (auto violations = validate(problem, config); !violations.empty()) {
        std::string msg = "invalid solver config:";
        for (const auto& v : violations) msg += " [" + v.field + ": " + v.message + "]";
        throw InputError(msg);
    }
    for (const auto& w : nu_warnings(config.nu_strategy)) std::cerr << "warning: " << w << '\n';

    const ViolationSink sink(config.violation_policy, solver);
    Rng rng(seed);

    Trace trace;
    trace.problem_name = problem.name;
    trace.solver = solver;
    trace.config = config;
    trace.sigma = problem.sigma;
    trace.x0 = x0;

    Vector x = x0;
    double phi_x = phi(problem, x);
    NuState nu_state;
    double phi_prev = phi_x;
    double eps_prev = 0.0;
    const auto objective = [&problem](const Vector& v) { return phi(problem, v); };

    trace.termination = Termination::MaxIter;
    for (std::size_t k = 0; k < config.max_iter; ++k) {
        IterationRecord rec;
        rec.k = k;
        rec.x = x;
        rec.phi_x = phi_x;
        rec.eps_k = config.eps_schedule.at(k);

        EpsSubgradCert cert = eps_subgrad(problem.h, x, rec.eps_k, rng);
        rec.w = std::move(cert.w);
        rec.eps_certified = cert.eps_achieved;

        SubproblemSolution sol = solve_inexact(problem.g, rec.w, x, config.theta, config.inexact_mode, rng);
        const Vector d = sol.y - x;
        rec.d_norm = d.norm();
        if (rec.d_norm <= config.d_zero_tol) {
            trace.termination = Termination::DZero;
            break;
        }
        rec.y = std::move(sol.y);
        rec.xi = std::move(sol.xi);
        rec.inexact_lhs = sol.lhs;
        rec.inexact_rhs = sol.rhs;

        const double d_sq = d.squaredNorm();
        if (k == 0) {
            auto [state, nu0] = nu_init(config.nu_strategy, phi_x, d_sq);
            nu_state = std::move(state);
            rec.nu_k = nu0.value_or(0.0);
        } else {
            try {
                auto [state, nu_k] = nu_next(config.nu_strategy, std::move(nu_state), k - 1, phi_prev, phi_x,
                                             eps_prev, d_sq);
                nu_state = std::move(state);
                rec.nu_k = nu_k;
            } catch (const InvariantViolation& e) {
                if (config.violation_policy == ViolationPolicy::Abort) throw;
                std::cerr << "warning: " << e.what() << '\n';
                rec.nu_k = 0.0;
                nu_state.nu_prev = 0.0;
            }
        }

        rec.lambda_bar = config.lambda_bar_rule.at(k);
        const LinesearchResult ls = nonmonotone_search(objective, rec.y, d, config.rho, config.beta, rec.lambda_bar,
                                                       rec.nu_k, config.max_backtracks);
        rec.lambda_k = ls.lambda;
        rec.n_backtracks = ls.n_backtracks;
        rec.phi_y = phi(problem, rec.y);

        if (rec.nu_k > 0.0) {
            try {
                const TauBound tb = tau_bound(problem.g, x, rec.y, d, rec.nu_k, rec.eps_k, problem.sigma, config.rho);
                rec.tau_hat = tb.tau_hat;
                rec.tau = tb.tau;
            } catch (const InvariantViolation& e) {
                sink.report(k, std::string("tau bound curvature (") + e.what() + ")");
            }
        }

        Vector x_next = rec.next_x();
        rec.phi_next = phi(problem, x_next);
        check_record(problem, config, rec, sink);

        const double step = (x_next - x).norm();
        phi_prev = phi_x;
        eps_prev = rec.eps_k;
        x = std::move(x_next);
        phi_x = rec.phi_next;
        trace.records.push_back(std::move(rec));
        if (step < config.stop_step_tol) {
            trace.termination = Termination::StepTol;
            break;
        }
    }
    trace.final_x = x;
    trace.final_phi = phi_x;
    return trace;
}

SolverConfig exact_variant(SolverConfig config) {
    config.eps_schedule = EpsSchedule::zero();
    config.inexact_mode = InexactMode::Exact;
    config.theta = 0.0;
    return config;
}

} // namespace

Trace run_inmbdca(const DcProblem& problem, const SolverConfig& config, const Vector& x0, std::uint64_t seed) {
    return run_loop(problem, config, x0, seed, "inmbdca");
}

Trace run_nmbdca(const DcProblem& problem, const SolverConfig& config, const Vector& x0) {
    return run_loop(problem, exact_variant(config), x0, 0, "nmbdca");
}

Trace run_dca(const DcProblem& problem, const SolverConfig& config, const Vector& x0) {
    SolverConfig exact = exact_variant(config);
    exact.lambda_bar_rule = LambdaBarRule::zero_boost();
    return run_loop(problem, exact, x0, 0, "dca");
}

} // namespace dcboost
