#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <variant>

namespace dcboost {

/// Choice of the nonmonotonicity slack nu_k used by the linesearch.
namespace nu {

/// nu_k = 0 for all k (monotone Armijo, BDCA reduction).
struct Zero {};

/// Direct rule: nu_{k+1} = fraction * (1 - Delta_{k+1}) * (phi_k - phi_{k+1} + nu_k + eps_k).
struct A1Direct {
    double delta_min = 0.1;
    /// k -> Delta_{k+1} in [delta_min, 1]; defaults to the constant delta_min.
    std::function<double(std::size_t)> delta_rule;
    double nu0 = 0.0;
    /// Fraction of the admissible upper bound actually used, in [0, 1].
    double fraction = 1.0;

    double delta_at(std::size_t k) const { return delta_rule ? delta_rule(k) : delta_min; }
};

/// Averaged cost updates: Q_{k+1} = eta_k Q_k + 1, C_{k+1} = (eta_k Q_k C_k + phi_{k+1}) / Q_{k+1},
/// nu_k = C_k - phi_k.
struct ZhangHager {
    double eta_min = 0.0;
    double eta_max = 0.85;
    double c0_offset = 1.0;
    /// k -> eta_k in [eta_min, eta_max]; defaults to the constant eta_max.
    std::function<double(std::size_t)> eta_rule;

    double eta_at(std::size_t k) const { return eta_rule ? eta_rule(k) : eta_max; }
};

/// Max over the last m_k + 1 objective values minus the current one.
struct Grippo {
    int M = 5;
};

/// nu_k = omega * ||d^k||^2 / u_k, with u_k = k + 1 unless overridden.
struct Ratio {
    double omega = 0.01;
    std::function<double(std::size_t)> u_rule;

    double u_at(std::size_t k) const { return u_rule ? u_rule(k) : static_cast<double>(k + 1); }
};

} // namespace nu

using NuStrategySpec = std::variant<nu::Zero, nu::A1Direct, nu::ZhangHager, nu::Grippo, nu::Ratio>;

std::string nu_kind_name(const NuStrategySpec& spec);

} // namespace dcboost
