#include "dcboost/subproblem.hpp"

#include <algorithm>
#include <cmath>

namespace dcboost {

namespace {

constexpr int kPerturbHalvings = 40;

double soft_threshold(double u, double b) { return std::copysign(std::max(std::abs(u) - b, 0.0), u); }

struct Candidate {
    Vector xi;
    double lhs;
    double rhs;
    bool passes;
};

// Best subgradient at y for the test: w projected onto dg(y).
Candidate evaluate(const ConvexExpr& g, const Vector& w, const Vector& x, const Vector& y, double theta) {
    Vector xi = subdiff_box(g, y).project(w);
    const double lhs = (w - xi).norm();
    const double rhs = theta * (y - x).norm();
    return {std::move(xi), lhs, rhs, lhs <= rhs};
}

SubproblemSolution exact_pair(const ConvexExpr& g, const Vector& w, const Vector& x, double theta) {
    Vector y = solve_exact(g, w, x);
    const double rhs = theta * (y - x).norm();
    return SubproblemSolution{std::move(y), w, 0.0, rhs, 0, InexactMode::Exact};
}

// 1-D subdifferential interval [lo, hi] of a t^2 + c t + b|t| at t.
std::pair<double, double> interval_1d(const SeparableForm& f, Eigen::Index i, double t) {
    const double smooth = 2.0 * f.a * t + f.c[i];
    if (t == 0.0) return {smooth - f.b, smooth + f.b};
    const double s = t > 0.0 ? f.b : -f.b;
    return {smooth + s, smooth + s};
}

SubproblemSolution inner_bisection(const ConvexExpr& g, const Vector& w, const Vector& x, double theta,
                                   int max_inner) {
    const Eigen::Index n = x.size();
    const SeparableForm form = flatten(g, n);
    Vector lo(n), hi(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double width = 1.0;
        while (interval_1d(form, i, x[i] - width).first > w[i]) width *= 2.0;
        lo[i] = x[i] - width;
        width = 1.0;
        while (interval_1d(form, i, x[i] + width).second < w[i]) width *= 2.0;
        hi[i] = x[i] + width;
    }

    Vector y = 0.5 * (lo + hi);
    for (int iter = 0; iter <= max_inner; ++iter) {
        Candidate c = evaluate(g, w, x, y, theta);
        if (c.passes) {
            return SubproblemSolution{std::move(y), std::move(c.xi), c.lhs, c.rhs, iter, InexactMode::InnerSolver};
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            const auto [l, u] = interval_1d(form, i, y[i]);
            if (u < w[i]) {
                lo[i] = y[i];
            } else if (l > w[i]) {
                hi[i] = y[i];
            } else {
                lo[i] = hi[i] = y[i];
            }
        }
        y = 0.5 * (lo + hi);
    }
    SubproblemSolution fallback = exact_pair(g, w, x, theta);
    fallback.inner_iters = max_inner;
    fallback.mode_used = InexactMode::InnerSolver;
    return fallback;
}

SubproblemSolution perturbed_exact(const ConvexExpr& g, const Vector& w, const Vector& x, double theta, Rng& rng) {
    const Vector y_star = solve_exact(g, w, x);
    const Vector dir = random_unit_vector(x.size(), rng);
    double good = 0.0;
    double bad = (y_star - x).norm();
    if (bad > 0.0 && evaluate(g, w, x, y_star + bad * dir, theta).passes) good = bad;
    if (good == 0.0) {
        for (int it = 0; it < kPerturbHalvings && bad > 0.0; ++it) {
            const double mid = 0.5 * (good + bad);
            (evaluate(g, w, x, y_star + mid * dir, theta).passes ? good : bad) = mid;
        }
    }
    if (good == 0.0) {
        SubproblemSolution exact = exact_pair(g, w, x, theta);
        exact.inner_iters = kPerturbHalvings;
        exact.mode_used = InexactMode::PerturbedExact;
        return exact;
    }
    Vector y = y_star + good * dir;
    Candidate c = evaluate(g, w, x, y, theta);
    return SubproblemSolution{std::move(y), std::move(c.xi), c.lhs, c.rhs, kPerturbHalvings,
                              InexactMode::PerturbedExact};
}

} // namespace

Vector solve_exact(const ConvexExpr& g, const Vector& w, const Vector& x) {
    if (w.size() != x.size()) throw InputError("solve_exact: w and x differ in dimension");
    const SeparableForm form = flatten(g, x.size());
    if (!(form.a > 0.0)) throw UnsupportedProblem("solve_exact: g must be strongly convex (modulus 0)");
    Vector y(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        y[i] = soft_threshold(w[i] - form.c[i], form.b) / (2.0 * form.a);
    }
    return y;
}

SubproblemSolution solve_inexact(const ConvexExpr& g, const Vector& w, const Vector& x, double theta,
                                 InexactMode mode, Rng& rng, int max_inner) {
    if (!(theta >= 0.0)) throw InputError("solve_inexact: theta must be >= 0");
    if (theta == 0.0 || mode == InexactMode::Exact) {
        SubproblemSolution s = exact_pair(g, w, x, theta);
        s.mode_used = theta == 0.0 ? mode : InexactMode::Exact;
        return s;
    }
    if (mode == InexactMode::InnerSolver) return inner_bisection(g, w, x, theta, max_inner);
    return perturbed_exact(g, w, x, theta, rng);
}

InexactCheck check_inexact(const ConvexExpr& g, const Vector& w, const Vector& x, const Vector& y, const Vector& xi,
                           double theta) {
    if (w.size() != x.size() || y.size() != x.size() || xi.size() != x.size()) {
        throw InputError("check_inexact: dimension mismatch");
    }
    InexactCheck out;
    out.lhs = (w - xi).norm();
    out.rhs = theta * (y - x).norm();
    out.membership_gap = subdiff_box(g, y).distance(xi);
    out.ok = out.membership_gap <= kMembershipTol && out.lhs <= out.rhs + kInexactSlack;
    return out;
}

} // namespace dcboost
