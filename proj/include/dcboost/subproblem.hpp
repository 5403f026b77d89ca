#pragma once

#include "dcboost/core.hpp"
#include "dcboost/oracles.hpp"

namespace dcboost {

/// (y, xi) with xi in dg(y) and ||w - xi|| <= theta ||y - x||.
struct SubproblemSolution {
    Vector y;
    Vector xi;
    double lhs = 0.0;   // ||w - xi||
    double rhs = 0.0;   // theta ||y - x||
    int inner_iters = 0;
    InexactMode mode_used = InexactMode::Exact;
};

/// Unique minimizer of g(y) - <w, y - x>, i.e. the y with w in dg(y).
/// Solved per coordinate: y_i = soft(w_i - c_i, b) / (2a).
/// Throws UnsupportedProblem when modulus(g) == 0.
Vector solve_exact(const ConvexExpr& g, const Vector& w, const Vector& x);

/// A pair satisfying the inexactness test.
///
/// - Exact: (solve_exact, w).
/// - InnerSolver: coordinate-wise bisection on w in dg(y); returns the first
///   iterate whose best subgradient (w projected onto dg(y)) passes the test.
///   Falls back to the closed form after `max_inner` steps.
/// - PerturbedExact: moves the exact solution along a random unit direction by
///   the largest radius (40 bisection halvings) that still passes the test.
///
/// theta == 0 always yields the exact pair.
SubproblemSolution solve_inexact(const ConvexExpr& g, const Vector& w, const Vector& x, double theta,
                                 InexactMode mode, Rng& rng, int max_inner = 200);

struct InexactCheck {
    bool ok = false;
    double lhs = 0.0;
    double rhs = 0.0;
    /// Largest per-coordinate distance from xi to dg(y).
    double membership_gap = 0.0;
};

InexactCheck check_inexact(const ConvexExpr& g, const Vector& w, const Vector& x, const Vector& y, const Vector& xi,
                           double theta);

} // namespace dcboost
