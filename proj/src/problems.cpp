#include "dcboost/problems.hpp"

#include <algorithm>
#include <random>

namespace dcboost {

DcProblem example_one() {
    ConvexExpr g = ConvexExpr::quadratic(1.5) + ConvexExpr::linear(Vector::Ones(2));
    ConvexExpr h = ConvexExpr::quadratic(0.5) + ConvexExpr::l1(1.0);
    std::vector<Vector> critical;
    for (double a : {-1.0, 0.0}) {
        for (double b : {-1.0, 0.0}) critical.push_back((Vector(2) << a, b).finished());
    }
    return make_problem("ex1", std::move(g), std::move(h), 2, -2.0, std::move(critical));
}

DcProblem example_two() {
    ConvexExpr g = ConvexExpr::quadratic(1.0) + ConvexExpr::l1(1.0) +
                   ConvexExpr::linear((Vector(2) << -2.5, 0.0).finished());
    ConvexExpr h = ConvexExpr::quadratic(0.5);
    return make_problem("ex2", std::move(g), std::move(h), 2, -1.125, {(Vector(2) << 1.5, 0.0).finished()});
}

double separable_min_1d(double a, double c, double b) {
    if (a <= 0.0) {
        if (a == 0.0 && std::abs(c) <= b) return 0.0;
        throw InputError("separable_min_1d: unbounded below");
    }
    // Minimize separately on t >= 0 and t <= 0.
    const double t_pos = std::max(0.0, -(c + b) / (2.0 * a));
    const double t_neg = std::min(0.0, -(c - b) / (2.0 * a));
    auto q = [&](double t) { return a * t * t + c * t + b * std::abs(t); };
    return std::min(q(t_pos), q(t_neg));
}

DcProblem random_separable(Eigen::Index dim, std::uint64_t seed) {
    if (dim <= 0) throw InputError("random-sep: dim must be positive");
    std::mt19937_64 rng(seed);
    auto uniform = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };

    double a_h = uniform(0.0, 1.0);
    double a_g = a_h + uniform(0.1, 1.0);
    const double b_g = uniform(0.0, 1.5);
    const double b_h = uniform(0.0, 1.5);
    Vector c_g(dim), c_h(dim);
    for (Eigen::Index i = 0; i < dim; ++i) c_g[i] = uniform(-2.0, 2.0);
    for (Eigen::Index i = 0; i < dim; ++i) c_h[i] = uniform(-1.0, 1.0);

    std::vector<ConvexExpr> g_terms{ConvexExpr::quadratic(a_g), ConvexExpr::linear(c_g), ConvexExpr::l1(b_g)};
    std::vector<ConvexExpr> h_terms{ConvexExpr::quadratic(a_h), ConvexExpr::linear(c_h), ConvexExpr::l1(b_h)};
    // Common modulus below 0.5: add the same quadratic to both components.
    if (const double shift = 0.25 - std::min(a_g, a_h); shift > 0.0) {
        g_terms.push_back(ConvexExpr::quadratic(shift));
        h_terms.push_back(ConvexExpr::quadratic(shift));
    }

    double lower = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) lower += separable_min_1d(a_g - a_h, c_g[i] - c_h[i], b_g - b_h);

    return make_problem("random-sep(" + std::to_string(dim) + "," + std::to_string(seed) + ")",
                        ConvexExpr::sum(std::move(g_terms)), ConvexExpr::sum(std::move(h_terms)), dim, lower);
}

const ProblemRegistry& ProblemRegistry::instance() {
    static const ProblemRegistry registry;
    return registry;
}

DcProblem ProblemRegistry::get(const std::string& name, const ProblemParams& params) const {
    if (name == "ex1") return example_one();
    if (name == "ex2") return example_two();
    if (name == "random-sep") return random_separable(params.dim, params.seed);
    throw InputError("unknown problem '" + name + "' (known: ex1, ex2, random-sep)");
}

std::vector<std::string> ProblemRegistry::names() const { return {"ex1", "ex2", "random-sep"}; }

} // namespace dcboost
