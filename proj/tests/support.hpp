#pragma once

#include "dcboost/core.hpp"
#include "dcboost/oracles.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace dcboost::testing {

inline Vector vec(std::initializer_list<double> v) {
    Vector out(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) out[i++] = x;
    return out;
}

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline Vector random_vector(Rng& rng, Eigen::Index n, double scale = 3.0) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = uniform(rng, -scale, scale);
    return v;
}

/// Random vector with some coordinates snapped to 0 so that l1 kinks are hit.
inline Vector random_point(Rng& rng, Eigen::Index n, double scale = 3.0) {
    Vector v = random_vector(rng, n, scale);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (uniform(rng, 0.0, 1.0) < 0.25) v[i] = 0.0;
    }
    return v;
}

/// Random atom tree of depth <= depth over R^n.
inline ConvexExpr random_tree(Rng& rng, Eigen::Index n, int depth = 2) {
    const int pick = std::uniform_int_distribution<int>(0, depth > 0 ? 3 : 2)(rng);
    switch (pick) {
    case 0:
        return ConvexExpr::quadratic(uniform(rng, 0.0, 2.0));
    case 1:
        return ConvexExpr::linear(random_vector(rng, n, 2.0));
    case 2:
        return ConvexExpr::l1(uniform(rng, 0.0, 2.0));
    default: {
        const int k = std::uniform_int_distribution<int>(0, 4)(rng);
        std::vector<ConvexExpr> terms;
        for (int i = 0; i < k; ++i) terms.push_back(random_tree(rng, n, depth - 1));
        return ConvexExpr::sum(std::move(terms));
    }
    }
}

/// Random tree with a quadratic atom of coefficient >= a_min.
inline ConvexExpr random_strongly_convex(Rng& rng, Eigen::Index n, double a_min = 0.1) {
    return ConvexExpr::quadratic(uniform(rng, a_min, 2.0)) + random_tree(rng, n, 2);
}

/// Reference value of a t^2 + c t + b|t| summed over coordinates, written independently of the library.
inline double separable_value(double a, const Vector& c, double b, const Vector& x) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) acc += a * x[i] * x[i] + c[i] * x[i] + b * std::abs(x[i]);
    return acc;
}

/// Minimizer of a 1-D function over [lo, hi] by a uniform grid of step `step` followed by
/// a local refinement pass of step step/1000 around the best grid point.
template <class F>
double grid_argmin_1d(F&& f, double lo, double hi, double step) {
    double best_t = lo;
    double best = f(lo);
    for (double t = lo; t <= hi; t += step) {
        const double v = f(t);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    const double fine = step / 1000.0;
    const double center = best_t;
    for (double t = center - step; t <= center + step; t += fine) {
        const double v = f(t);
        if (v < best) {
            best = v;
            best_t = t;
        }
    }
    return best_t;
}

} // namespace dcboost::testing
