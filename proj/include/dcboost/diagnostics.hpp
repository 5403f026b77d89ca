#pragma once

#include "dcboost/core.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dcboost {

/// Slack (RHS - LHS) of the two descent estimates at iteration k:
///   phi(y) <= phi(x) - (sigma/2 - theta)||d||^2 + eps
///   phi(x+) <= phi(x) - (sigma/2 - theta + rho lambda^2)||d||^2 + nu + eps
struct DescentResidual {
    std::size_t k = 0;
    double slack_y = 0.0;
    double slack_next = 0.0;
    bool flagged = false;
};

std::vector<DescentResidual> check_descent(const Trace& trace, double sigma, double theta);

/// Largest per-coordinate gap between dg(x) and dh(x); 0 exactly at critical
/// points. For eps > 0 both boxes are replaced by eps_subdiff_box.
double criticality_residual(const DcProblem& problem, const Vector& x, double eps = 0.0);

/// Approximate-criticality level certified for trace.final_x by the last
/// record: xi^K is a gap_g-subgradient of g and w^K an (eps_K + gap_h)-subgradient
/// of h at final_x, where the gaps are the linearization gaps
///   gap_g = g(x) - g(y^K) - <xi^K, x - y^K>,  gap_h = h(x) - h(x^K) - <w^K, x - x^K>.
/// Returns max(gap_g, eps_K + gap_h), or 0 for an empty trace.
double terminal_eps(const DcProblem& problem, const Trace& trace);

struct ComplexityReport {
    std::size_t N = 0;
    double min_d_norm = 0.0;
    /// sqrt((phi(x0) - phi_bar + sum nu + sum eps) / ((sigma/2 - theta) N)) over the whole trace.
    double bound_A2 = 0.0;
    /// Same bound with prefix sums, for every prefix length 1..N.
    std::vector<double> prefix_min_d_norm;
    std::vector<double> prefix_bound;
    bool all_prefixes_hold = true;
    std::optional<std::size_t> first_violating_prefix;

    /// Bound under the (A3)-type hypotheses with fraction xi; denominators
    /// (1 - 2 xi) and (1 - xi) respectively. Empty when the hypotheses fail
    /// on the trace.
    double xi = 0.25;
    std::optional<std::size_t> k0;
    std::optional<double> bound_A3;
    std::optional<double> bound_A3_one_minus_xi;

    /// min ||d^k|| over the trailing half of the trace.
    double liminf_proxy = 0.0;
};

/// Throws InputError when phi_bar exceeds a recorded objective value or the
/// trace is empty.
ComplexityReport complexity_report(const Trace& trace, double phi_bar, double sigma, double theta, double xi = 0.25);

} // namespace dcboost
