#include "doctest.h"
#include "support.hpp"

#include "dcboost/problems.hpp"
#include "dcboost/subproblem.hpp"

using namespace dcboost;
using namespace dcboost::testing;

namespace {

// Grid minimizer of g(y) - <w, y> per coordinate, independent of the closed form.
Vector grid_solve(const ConvexExpr& g, const Vector& w, double lo, double hi) {
    const SeparableForm f = flatten(g, w.size());
    Vector y(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
        auto obj = [&](double t) { return f.a * t * t + f.c[i] * t + f.b * std::abs(t) - w[i] * t; };
        y[i] = grid_argmin_1d(obj, lo, hi, 1e-4);
    }
    return y;
}

} // namespace

TEST_CASE("solve_exact examples") {
    const ConvexExpr g1 = ConvexExpr::quadratic(1.5) + ConvexExpr::linear(vec({1, 1}));
    CHECK(solve_exact(g1, vec({2, 2}), vec({1, 1})).isApprox(vec({1.0 / 3, 1.0 / 3}), 1e-14));
    CHECK(solve_exact(ConvexExpr::quadratic(0.5), vec({0, 0}), vec({4, 4})).norm() == 0.0);
    const Vector y2 = solve_exact(example_two().g, vec({0, 0}), vec({0, 0}));
    CHECK(y2[0] == doctest::Approx(0.75));
    CHECK(y2[1] == 0.0);

    CHECK(grid_solve(g1, vec({2, 2}), -2, 2).isApprox(vec({1.0 / 3, 1.0 / 3}), 1e-4));
    CHECK((grid_solve(example_two().g, vec({0, 0}), -2, 2) - vec({0.75, 0})).lpNorm<Eigen::Infinity>() <= 1e-4);
}

TEST_CASE("solve_exact requires a strongly convex g") {
    CHECK_THROWS_AS(solve_exact(ConvexExpr::l1(1.0), vec({0.5}), vec({0})), UnsupportedProblem);
}

TEST_CASE("property: solve_exact matches grid search on random 1-D and 2-D instances") {
    Rng rng(2718);
    for (int trial = 0; trial < 100; ++trial) {
        const Eigen::Index n = trial % 2 == 0 ? 2 : 1;
        const ConvexExpr g = random_strongly_convex(rng, n, 0.3);
        const Vector w = random_vector(rng, n, 3.0);
        const Vector y = solve_exact(g, w, Vector::Zero(n));
        const Vector grid = grid_solve(g, w, -15.0, 15.0);
        REQUIRE((y - grid).lpNorm<Eigen::Infinity>() <= 1e-4);
        REQUIRE(check_inexact(g, w, Vector::Zero(n), y, w, 0.0).ok);
    }
}

TEST_CASE("solve_inexact examples") {
    const ConvexExpr g = ConvexExpr::quadratic(1.5) + ConvexExpr::linear(vec({1, 1}));
    const Vector w = vec({2, 2});
    const Vector x = vec({1, 1});
    Rng rng(4);

    const SubproblemSolution exact = solve_inexact(g, w, x, 0.2, InexactMode::Exact, rng);
    CHECK(exact.y.isApprox(solve_exact(g, w, x)));
    CHECK(exact.xi == w);
    CHECK(exact.lhs == 0.0);

    const SubproblemSolution pert = solve_inexact(g, w, x, 0.2, InexactMode::PerturbedExact, rng);
    CHECK(pert.lhs <= 0.2 * (pert.y - x).norm() + 1e-12);
    CHECK((pert.y - vec({1.0 / 3, 1.0 / 3})).norm() > 0.0);
    CHECK(check_inexact(g, w, x, pert.y, pert.xi, 0.2).ok);

    for (auto mode : {InexactMode::InnerSolver, InexactMode::PerturbedExact, InexactMode::Exact}) {
        const SubproblemSolution s = solve_inexact(g, w, x, 0.0, mode, rng);
        CHECK(s.y == solve_exact(g, w, x));
        CHECK(s.xi == w);
    }
}

TEST_CASE("solve_inexact falls back to the exact pair when x is already the solution") {
    const ConvexExpr g = ConvexExpr::quadratic(0.5) + ConvexExpr::l1(1.0);
    const Vector x = vec({0, 0});
    const Vector w = vec({0.3, -0.2});
    Rng rng(1);
    for (auto mode : {InexactMode::InnerSolver, InexactMode::PerturbedExact}) {
        const SubproblemSolution s = solve_inexact(g, w, x, 0.2, mode, rng);
        CHECK(s.y == x);
        CHECK(s.lhs == 0.0);
        CHECK(s.rhs == 0.0);
    }
}

TEST_CASE("check_inexact examples") {
    const ConvexExpr g = ConvexExpr::quadratic(1.5) + ConvexExpr::linear(vec({1, 1}));
    const Vector w = vec({2, 2});
    const Vector x = vec({1, 1});
    const Vector y = solve_exact(g, w, x);
    const InexactCheck ok = check_inexact(g, w, x, y, w, 0.2);
    CHECK(ok.ok);
    CHECK(ok.lhs == 0.0);

    // Off the subdifferential, but far enough from w to fail the distance test.
    const double theta = 0.2;
    const Vector y_far = vec({0.0, 0.5});
    const Vector xi_far = w + (theta * (y_far - x).norm() + 0.1) * vec({1, 0});
    const InexactCheck too_far = check_inexact(g, w, x, y_far, xi_far, theta);
    CHECK_FALSE(too_far.ok);
    CHECK(too_far.lhs > too_far.rhs);

    const Vector xi_out = subgrad_select(g, y_far) + vec({1e-3, 0});
    const InexactCheck outside = check_inexact(g, w, x, y_far, xi_out, 10.0);
    CHECK_FALSE(outside.ok);
    CHECK(outside.membership_gap == doctest::Approx(1e-3));
}

TEST_CASE("property: solve_inexact passes its own test in every mode") {
    Rng rng(314);
    for (auto mode : {InexactMode::InnerSolver, InexactMode::PerturbedExact, InexactMode::Exact}) {
        for (int trial = 0; trial < 100; ++trial) {
            const Eigen::Index n = std::uniform_int_distribution<Eigen::Index>(1, 5)(rng);
            const ConvexExpr g = random_strongly_convex(rng, n, 0.1);
            const Vector x = random_point(rng, n);
            const Vector w = random_vector(rng, n, 4.0);
            const double theta = uniform(rng, 0.0, modulus(g) / 2.0);
            const SubproblemSolution s = solve_inexact(g, w, x, theta, mode, rng);
            const InexactCheck c = check_inexact(g, w, x, s.y, s.xi, theta);
            REQUIRE(c.ok);
            REQUIRE(c.membership_gap <= 1e-10);
            REQUIRE(s.lhs <= s.rhs + 1e-12);
            // g(x) >= g(y) - <w, y - x> follows from w in the eps-free model of the subproblem.
            const double scale = 1.0 + std::abs(value(g, x)) + std::abs(value(g, s.y));
            REQUIRE(value(g, x) >= value(g, s.y) - w.dot(s.y - x) - 1e-10 * scale);
        }
    }
}

TEST_CASE("inner solver stops before the closed form when theta allows it") {
    const ConvexExpr g = ConvexExpr::quadratic(1.0) + ConvexExpr::l1(0.5);
    const Vector x = vec({5, -5});
    const Vector w = vec({1, 1});
    Rng rng(0);
    const SubproblemSolution s = solve_inexact(g, w, x, 0.4, InexactMode::InnerSolver, rng);
    CHECK(s.mode_used == InexactMode::InnerSolver);
    CHECK(s.inner_iters < 200);
    CHECK(s.lhs <= s.rhs);
}
