// ensemble.hpp: exact passive energies of n independent battery copies
//
// The d^n eigenvalues of ⊗^n ρ and the d^n levels of the sum Hamiltonian
// H^(n) only depend on how often each single-copy index occurs, so both
// lists are compressed to one entry per composition (k_1, …, k_d) of n with
// multiplicity n!/(k_1!…k_d!). The passive energy of ⊗^n ρ pairs the
// probability list sorted descending with the energy list sorted ascending;
// on the compressed lists this is a two-pointer merge over multiplicity
// intervals, costing O(C(n+d−1, d−1) log) instead of O(d^n log).

#pragma once

#include "ergokit/battery.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace ergokit {

struct EnsembleOptions {
    double max_compositions = 5e7;  // cap on C(n+d−1, d−1)
    double max_oracle_levels = 1e7;  // cap on d^n for the brute-force oracle
    // 0 = hardware concurrency
    unsigned threads = 0;
};

struct LevelEntry {
    double log_prob = 0.0;  // Σ k_j ln r_j, −∞ when a zero eigenvalue is used
    double energy = 0.0;    // Σ k_j ε_j (total, not per copy)
    double log_mult = 0.0;  // ln(n!/(k_1!…k_d!))
};

class WeightedLevelTable {
public:
    WeightedLevelTable(int n, std::size_t d) : n_(n), d_(d) {}

    int copies() const noexcept { return n_; }
    std::size_t levels_per_copy() const noexcept { return d_; }
    std::size_t size() const noexcept { return entries_.size(); }

    const std::vector<LevelEntry>& entries() const noexcept { return entries_; }
    std::span<const std::uint32_t> composition(std::size_t i) const {
        return std::span<const std::uint32_t>(counts_).subspan(i * d_, d_);
    }

    void push(std::span<const std::uint32_t> counts, const LevelEntry& entry);

private:
    int n_;
    std::size_t d_;
    std::vector<LevelEntry> entries_;
    std::vector<std::uint32_t> counts_;  // d per entry
};

// C(n+d−1, d−1) as a double (exact below 2^53).
double composition_count(int n, std::size_t d);

// Largest n' <= n_max whose composition count fits the cap (0 if none).
int largest_feasible_n(std::size_t d, int n_max, double max_compositions);

// Throws ValidationError on a bad spectrum, CapExceeded above the cap.
WeightedLevelTable build_level_table(std::span<const double> spectrum, const BatterySpec& battery,
                                     int n, const EnsembleOptions& opts = {});

// Total (not per copy) energy of matching entries taken in `prob_order`
// against entries taken in `energy_order`. Both orders must list every
// entry; the caller is responsible for them being sorted.
double matched_energy(const WeightedLevelTable& table, std::span<const std::size_t> prob_order,
                      std::span<const std::size_t> energy_order);

// (1/n) tr(σ_{⊗^n ρ} H^(n))
double passive_energy_per_copy(const WeightedLevelTable& table);

// Same quantity by materializing all d^n levels. Throws CapExceeded.
double brute_force_oracle(std::span<const double> spectrum, const BatterySpec& battery, int n,
                          const EnsembleOptions& opts = {});

struct EnsembleCurve {
    std::vector<double> e;  // e[n-1] = e^(n)
    std::vector<double> w;  // w[n-1] = tr(ρH) − e^(n)
    double asymptote = 0.0;  // tr(ω_β̄ H)
    double beta = 0.0;       // β̄
    double initial_per_copy_energy = 0.0;

    int n_max() const noexcept { return static_cast<int>(e.size()); }
    double e_at(int n) const { return e.at(static_cast<std::size_t>(n - 1)); }
    double w_at(int n) const { return w.at(static_cast<std::size_t>(n - 1)); }
    double gap_at(int n) const { return e_at(n) - asymptote; }
};

// e^(n) for n = 1..n_max from the spectrum of ρ. Throws CapExceeded carrying
// the largest feasible n when n_max is beyond the cap.
EnsembleCurve curve(const QuantumState& state, const BatterySpec& battery, int n_max,
                    const EnsembleOptions& opts = {});

struct PassivityDiagnostic {
    bool is_gibbs_like = false;
    std::optional<int> first_active_n;
    std::vector<double> per_copy_work;  // w(n), n = 1..n_max
    // Least-squares fit ln p_j ≈ a − β ε_j; β = +∞ for a pure ground state,
    // residual = +∞ when an excited level is empty but the state is not pure.
    double fit_beta = 0.0;
    double fit_residual = 0.0;  // RMS in log space
};

// Finite-n check of complete passivity for a state diagonal in the energy
// basis (NotDiagonal otherwise). n counts as active when w(n) > tol.
PassivityDiagnostic complete_passivity_check(const QuantumState& state, const BatterySpec& battery,
                                             int n_max, double tol = 1e-12,
                                             const EnsembleOptions& opts = {});

} // namespace ergokit
