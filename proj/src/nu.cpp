#include "dcboost/nu.hpp"

#include <algorithm>
#include <sstream>

namespace dcboost {

namespace {

constexpr double kSummableTail = 1e-10;
constexpr double kDescentPrecondition = 1e-10;

} // namespace

std::pair<NuState, std::optional<double>> nu_init(const NuStrategySpec& spec, double phi_x0,
                                                  std::optional<double> d0_norm_sq) {
    NuState state;
    std::optional<double> nu0;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, nu::Zero>) {
                nu0 = 0.0;
            } else if constexpr (std::is_same_v<T, nu::A1Direct>) {
                nu0 = s.nu0;
            } else if constexpr (std::is_same_v<T, nu::ZhangHager>) {
                state.Q = 1.0;
                state.C = phi_x0 + s.c0_offset;
                nu0 = state.C - phi_x0;
            } else if constexpr (std::is_same_v<T, nu::Grippo>) {
                state.window.push_back(phi_x0);
                state.m_prev = 0;
                nu0 = 0.0;
            } else if constexpr (std::is_same_v<T, nu::Ratio>) {
                if (d0_norm_sq) nu0 = s.omega * *d0_norm_sq / s.u_at(0);
            }
        },
        spec);
    if (nu0) state.nu_prev = *nu0;
    return {std::move(state), nu0};
}

std::pair<NuState, double> nu_next(const NuStrategySpec& spec, NuState state, std::size_t k, double phi_prev,
                                   double phi_curr, double eps_k, double d_norm_sq) {
    const double decrease = phi_prev - phi_curr + state.nu_prev + eps_k;
    if (decrease < -kDescentPrecondition) {
        std::ostringstream os;
        os << "descent estimate phi(x^k) - phi(x^{k+1}) + nu_k + eps_k >= 0 violated at k=" << k << " (value "
           << decrease << ")";
        throw InvariantViolation(os.str());
    }
    double next = 0.0;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, nu::Zero>) {
                next = 0.0;
            } else if constexpr (std::is_same_v<T, nu::A1Direct>) {
                const double delta = s.delta_at(k);
                next = s.fraction * std::max((1.0 - delta) * decrease, 0.0);
            } else if constexpr (std::is_same_v<T, nu::ZhangHager>) {
                const double eta = s.eta_at(k);
                const double q_next = eta * state.Q + 1.0;
                state.C = (eta * state.Q * state.C + phi_curr) / q_next;
                state.Q = q_next;
                next = std::max(state.C - phi_curr, 0.0);
            } else if constexpr (std::is_same_v<T, nu::Grippo>) {
                const int m = std::min(state.m_prev + 1, s.M);
                state.window.push_back(phi_curr);
                while (state.window.size() > static_cast<std::size_t>(m) + 1) state.window.pop_front();
                state.m_prev = m;
                next = *std::max_element(state.window.begin(), state.window.end()) - phi_curr;
            } else if constexpr (std::is_same_v<T, nu::Ratio>) {
                next = s.omega * d_norm_sq / s.u_at(k + 1);
            }
        },
        spec);
    state.nu_prev = next;
    return {std::move(state), next};
}

std::vector<std::string> nu_warnings(const NuStrategySpec& spec) {
    std::vector<std::string> out;
    if (const auto* a1 = std::get_if<nu::A1Direct>(&spec); a1 && a1->delta_min == 0.0) {
        out.emplace_back("A1Direct with delta_min = 0: summability of nu_k is not guaranteed");
    }
    return out;
}

SummabilityReport verify_A2(const Trace& trace) {
    SummabilityReport report;
    double acc = 0.0;
    for (const auto& r : trace.records) {
        acc += r.nu_k;
        report.partial_sums.push_back(acc);
    }
    if (!trace.records.empty()) report.bounded = trace.records.back().nu_k < kSummableTail;
    return report;
}

std::optional<std::size_t> verify_A3(const Trace& trace, double delta) {
    if (trace.records.empty()) return 0;
    std::size_t k0 = trace.records.size();
    for (std::size_t i = trace.records.size(); i-- > 0;) {
        const auto& r = trace.records[i];
        if (r.nu_k <= delta * r.d_norm * r.d_norm) {
            k0 = i;
        } else {
            break;
        }
    }
    if (k0 == trace.records.size()) return std::nullopt;
    return k0;
}

} // namespace dcboost
