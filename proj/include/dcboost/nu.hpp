#pragma once

#include "dcboost/core.hpp"
#include "dcboost/nu_spec.hpp"

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dcboost {

/// Carry threaded through the solver loop. Only the fields of the active
/// strategy are meaningful.
struct NuState {
    double nu_prev = 0.0;          // nu_k, the most recently issued value
    double Q = 1.0;                // ZhangHager
    double C = 0.0;                // ZhangHager
    std::deque<double> window;     // Grippo: last m_k + 1 objective values
    int m_prev = 0;                // Grippo
};

/// nu_0 and the initial carry. Ratio needs ||d^0||^2; without it nu0 is empty.
std::pair<NuState, std::optional<double>> nu_init(const NuStrategySpec& spec, double phi_x0,
                                                  std::optional<double> d0_norm_sq = std::nullopt);

/// nu_{k+1} from nu_k (carried in `state`), phi(x^k), phi(x^{k+1}), eps_k and
/// ||d^{k+1}||^2 (used only by Ratio).
///
/// Throws InvariantViolation if phi_prev - phi_curr + nu_k + eps_k < -1e-10,
/// which the descent estimate rules out for any genuine run.
std::pair<NuState, double> nu_next(const NuStrategySpec& spec, NuState state, std::size_t k, double phi_prev,
                                   double phi_curr, double eps_k, double d_norm_sq);

/// Non-fatal configuration concerns (e.g. A1Direct with delta_min = 0).
std::vector<std::string> nu_warnings(const NuStrategySpec& spec);

struct SummabilityReport {
    std::vector<double> partial_sums;
    /// Finite-trace proxy for sum nu_k < inf: the trailing increments fell below 1e-10.
    bool bounded = true;
};

SummabilityReport verify_A2(const Trace& trace);

/// Smallest k0 with nu_k <= delta ||d^k||^2 for every recorded k >= k0.
std::optional<std::size_t> verify_A3(const Trace& trace, double delta);

} // namespace dcboost
