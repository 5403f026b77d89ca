#include "dcboost/diagnostics.hpp"

#include "dcboost/nu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace dcboost {

std::vector<DescentResidual> check_descent(const Trace& trace, double sigma, double theta) {
    std::vector<DescentResidual> out;
    out.reserve(trace.records.size());
    const double coeff = sigma / 2.0 - theta;
    const double rho = trace.config.rho;
    for (const auto& r : trace.records) {
        const double d_sq = r.d_norm * r.d_norm;
        DescentResidual res;
        res.k = r.k;
        res.slack_y = r.phi_x - coeff * d_sq + r.eps_k - r.phi_y;
        res.slack_next = r.phi_x - (coeff + rho * r.lambda_k * r.lambda_k) * d_sq + r.nu_k + r.eps_k - r.phi_next;
        res.flagged = res.slack_y < -kDescentSlack || res.slack_next < -kDescentSlack;
        out.push_back(res);
    }
    return out;
}

double criticality_residual(const DcProblem& problem, const Vector& x, double eps) {
    if (x.size() != problem.dim) throw InputError("criticality_residual: dimension mismatch");
    const SubdiffBox g_box = eps_subdiff_box(problem.g, x, eps);
    const SubdiffBox h_box = eps_subdiff_box(problem.h, x, eps);
    double gap = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        gap = std::max({gap, g_box.lo[i] - h_box.hi[i], h_box.lo[i] - g_box.hi[i]});
    }
    return gap;
}

double terminal_eps(const DcProblem& problem, const Trace& trace) {
    if (trace.records.empty()) return 0.0;
    const IterationRecord& r = trace.records.back();
    const Vector& x = trace.final_x;
    const double gap_g = value(problem.g, x) - value(problem.g, r.y) - r.xi.dot(x - r.y);
    const double gap_h = value(problem.h, x) - value(problem.h, r.x) - r.w.dot(x - r.x);
    return std::max({0.0, gap_g, r.eps_k + gap_h});
}

ComplexityReport complexity_report(const Trace& trace, double phi_bar, double sigma, double theta, double xi) {
    double lowest = trace.final_phi;
    for (const auto& r : trace.records) lowest = std::min(lowest, r.phi_x);
    if (!std::isfinite(phi_bar) || phi_bar > lowest) {
        std::ostringstream os;
        os << "phi_bar = " << phi_bar << " is not a lower bound: the trace reaches " << lowest;
        throw InputError(os.str());
    }
    if (!(xi > 0.0 && xi < 0.5)) throw InputError("complexity_report: xi must lie in (0, 1/2)");
    const double coeff = sigma / 2.0 - theta;
    if (!(coeff > 0.0)) throw InputError("complexity_report: requires theta < sigma/2");

    ComplexityReport rep;
    rep.xi = xi;
    rep.N = trace.records.size();
    if (rep.N == 0) {
        rep.min_d_norm = std::numeric_limits<double>::infinity();
        rep.bound_A2 = std::numeric_limits<double>::infinity();
        rep.liminf_proxy = std::numeric_limits<double>::infinity();
        return rep;
    }

    const double phi0 = trace.records.front().phi_x;
    double sum_nu = 0.0;
    double sum_eps = 0.0;
    double min_d = std::numeric_limits<double>::infinity();
    for (std::size_t n = 1; n <= rep.N; ++n) {
        const auto& r = trace.records[n - 1];
        sum_nu += r.nu_k;
        sum_eps += r.eps_k;
        min_d = std::min(min_d, r.d_norm);
        const double bound = std::sqrt((phi0 - phi_bar + sum_nu + sum_eps) / (coeff * static_cast<double>(n)));
        rep.prefix_min_d_norm.push_back(min_d);
        rep.prefix_bound.push_back(bound);
        if (min_d > bound + 1e-10 && rep.all_prefixes_hold) {
            rep.all_prefixes_hold = false;
            rep.first_violating_prefix = n;
        }
    }
    rep.min_d_norm = min_d;
    rep.bound_A2 = rep.prefix_bound.back();

    // (A3)-type bound: from k0 on, both nu_k and eps_k are at most xi (sigma/2 - theta) ||d^k||^2.
    const double delta = xi * coeff;
    std::optional<std::size_t> k0 = verify_A3(trace, delta);
    if (k0) {
        std::size_t start = *k0;
        for (std::size_t i = rep.N; i-- > start;) {
            const auto& r = trace.records[i];
            if (r.eps_k > delta * r.d_norm * r.d_norm) {
                start = i + 1;
                break;
            }
        }
        if (start < rep.N) {
            double head = phi0 - phi_bar;
            for (std::size_t i = 0; i < start; ++i) head += trace.records[i].nu_k + trace.records[i].eps_k;
            const double n = static_cast<double>(rep.N);
            rep.k0 = start;
            rep.bound_A3 = std::sqrt(head / ((1.0 - 2.0 * xi) * coeff * n));
            rep.bound_A3_one_minus_xi = std::sqrt(head / ((1.0 - xi) * coeff * n));
        }
    }

    const std::size_t half = rep.N / 2;
    rep.liminf_proxy = std::numeric_limits<double>::infinity();
    for (std::size_t i = half; i < rep.N; ++i) rep.liminf_proxy = std::min(rep.liminf_proxy, trace.records[i].d_norm);
    return rep;
}

} // namespace dcboost
