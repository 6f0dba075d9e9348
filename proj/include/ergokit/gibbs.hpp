// gibbs.hpp: Gibbs states, von Neumann entropy, entropy-matched temperature
//
// Units: k_B = 1, entropies in nats, β in inverse energy units.

#pragma once

#include "ergokit/battery.hpp"

#include <span>
#include <vector>

namespace ergokit {

// −Σ p ln p with 0 ln 0 = 0.
double shannon_entropy(std::span<const double> probabilities);
double entropy(const QuantumState& state);

struct GibbsState {
    double beta = 0.0;
    std::vector<double> populations;
    // Σ_k exp(−β(ε_k − shift)); the conventional Z is partition_function·exp(−β·shift).
    double partition_function = 1.0;
    double shift = 0.0;  // ε_1
    double energy = 0.0;
    double entropy = 0.0;

    QuantumState state() const { return QuantumState::diagonal(populations); }
};

// Boltzmann weights relative to the ground level. beta must be finite and >= 0.
GibbsState gibbs_state(const BatterySpec& battery, double beta);

struct GibbsMatch {
    double beta = 0.0;
    std::vector<double> populations;
    double partition_function = 1.0;  // shifted convention, see GibbsState
    double gibbs_energy = 0.0;
    double gibbs_entropy = 0.0;
    double target_entropy = 0.0;
    // β̄ = ∞ is not representable; set when the target is below S(ω_{β_cap}).
    bool saturated = false;
};

struct MatchOptions {
    double tol = 1e-10;
    // β_cap = ln(1/tol_pop) / (ε_2 − ε_1)
    double tol_pop = 1e-15;
};

// Solves S(ω_β) = target by bisection on β ≥ 0. Throws TargetOutOfRange.
GibbsMatch match_entropy(const BatterySpec& battery, double target_entropy,
                         const MatchOptions& opts = {});

// tr(ρH) − tr(ω_β̄ H) with S(ω_β̄) = S(ρ); an upper bound on the ergotropy.
double thermodynamic_bound(const QuantumState& state, const BatterySpec& battery,
                           const MatchOptions& opts = {});

} // namespace ergokit
