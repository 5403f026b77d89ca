#pragma once

#include "dcboost/common.hpp"
#include "dcboost/oracles.hpp"

#include <functional>

namespace dcboost {

struct LinesearchResult {
    double lambda = 0.0;
    int n_backtracks = 0;
    double accepted_value = 0.0;   // phi(y + lambda d)
    double condition_slack = 0.0;  // RHS - LHS of the acceptance test at lambda
};

using ObjectiveFn = std::function<double(const Vector&)>;

/// Nonmonotone backtracking: the first lambda = lambda_bar * beta^j with
///   phi(y + lambda d) <= phi(y) - rho lambda^2 ||d||^2 + nu.
/// lambda_bar == 0 returns 0 at once; exhausting max_backtracks returns 0,
/// which is always acceptable because nu >= 0.
/// Throws InputError on d == 0 or nu < 0.
LinesearchResult nonmonotone_search(const ObjectiveFn& phi_eval, const Vector& y, const Vector& d, double rho,
                                    double beta, double lambda_bar, double nu, int max_backtracks = 60);

struct TauBound {
    double tau_hat = 0.0;
    double tau = 0.0;
};

/// Guaranteed step interval (0, tau] for the acceptance test:
///   tau_hat = nu / (g(y + d) + g(x) - 2 g(y) + eps),  tau = min(1, tau_hat, sigma / rho).
/// The denominator is at least sigma ||d||^2 for a genuine iterate; anything
/// else raises InvariantViolation.
TauBound tau_bound(const ConvexExpr& g, const Vector& x, const Vector& y, const Vector& d, double nu, double eps,
                   double sigma, double rho);

} // namespace dcboost
