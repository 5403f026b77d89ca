#pragma once

#include "dcboost/core.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace dcboost {

struct ProblemParams {
    Eigen::Index dim = 5;
    std::uint64_t seed = 0;
};

/// Named test problems.
///
///   ex1         phi = x^2 + y^2 + x + y - |x| - |y|
///               g = 1.5||x||^2 + <(1,1), x>,  h = 0.5||x||^2 + ||x||_1
///   ex2         phi = 0.5(x^2 + y^2) + |x| + |y| - 2.5x
///               g = ||x||^2 + ||x||_1 + <(-2.5,0), x>,  h = 0.5||x||^2
///   random-sep  seeded random instance of the separable atom class with
///               sigma >= 0.5 and an exact lower bound
class ProblemRegistry {
public:
    static const ProblemRegistry& instance();

    /// Throws InputError for an unknown name.
    DcProblem get(const std::string& name, const ProblemParams& params = {}) const;

    std::vector<std::string> names() const;
};

DcProblem example_one();
DcProblem example_two();
DcProblem random_separable(Eigen::Index dim, std::uint64_t seed);

/// Exact minimum of a t^2 + c t + b|t| over t (requires a > 0, or a == 0 with |c| <= b).
double separable_min_1d(double a, double c, double b);

} // namespace dcboost
