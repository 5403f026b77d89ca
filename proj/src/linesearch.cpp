#include "dcboost/linesearch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dcboost {

LinesearchResult nonmonotone_search(const ObjectiveFn& phi_eval, const Vector& y, const Vector& d, double rho,
                                    double beta, double lambda_bar, double nu, int max_backtracks) {
    const double d_sq = d.squaredNorm();
    if (!(d_sq > 0.0)) throw InputError("nonmonotone_search: direction must be nonzero");
    if (!(nu >= 0.0)) throw InputError("nonmonotone_search: nu must be >= 0");
    if (!(lambda_bar >= 0.0)) throw InputError("nonmonotone_search: lambda_bar must be >= 0");

    const double phi_y = phi_eval(y);
    LinesearchResult out{0.0, 0, phi_y, nu};
    if (lambda_bar == 0.0) return out;

    double lambda = lambda_bar;
    for (int j = 0;; ++j) {
        const double trial = phi_eval(y + lambda * d);
        const double slack = phi_y - rho * lambda * lambda * d_sq + nu - trial;
        if (slack >= 0.0) return LinesearchResult{lambda, j, trial, slack};
        if (j == max_backtracks) {
            out.n_backtracks = j;
            return out;
        }
        lambda *= beta;
    }
}

TauBound tau_bound(const ConvexExpr& g, const Vector& x, const Vector& y, const Vector& d, double nu, double eps,
                   double sigma, double rho) {
    if (!(nu > 0.0)) throw InputError("tau_bound: nu must be > 0");
    if (!(eps >= 0.0)) throw InputError("tau_bound: eps must be >= 0");
    const double d_sq = d.squaredNorm();
    if (!(d_sq > 0.0)) throw InputError("tau_bound: d must be nonzero");

    const double g_y = value(g, y);
    const double g_yd = value(g, y + d);
    const double g_x = value(g, x);
    const double curvature = g_yd + g_x - 2.0 * g_y;
    const double rounding = 1e-12 * (std::abs(g_yd) + std::abs(g_x) + 2.0 * std::abs(g_y));
    if (!(curvature + eps > 0.0) || curvature < sigma * d_sq - rounding) {
        std::ostringstream os;
        os << "tau_bound: g(y+d) + g(x) - 2g(y) = " << curvature << " is below sigma*||d||^2 = " << sigma * d_sq;
        throw InvariantViolation(os.str());
    }
    TauBound out;
    out.tau_hat = nu / (curvature + eps);
    out.tau = std::min({1.0, out.tau_hat, sigma / rho});
    return out;
}

} // namespace dcboost
