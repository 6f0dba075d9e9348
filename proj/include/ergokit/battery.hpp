// battery.hpp: battery model, passivity and single-copy ergotropy
//
// A battery is a d-level system with a non-degenerate Hamiltonian
// H = Σ_j ε_j |j⟩⟨j|. States are density matrices written in that energy
// basis, either as a population vector (diagonal) or as a full matrix.
//
// The passive state σ_ρ carries the eigenvalues of ρ sorted non-increasing
// against ascending energies; its energy is the minimum of tr(UρU†H) over
// all unitaries, and ergotropy = tr(ρH) − tr(σ_ρ H).

#pragma once

#include "ergokit/numkernel.hpp"

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace ergokit {

class BatterySpec {
public:
    // Throws ValidationError unless d >= 2 and energies strictly increase.
    explicit BatterySpec(std::vector<double> energies);

    std::size_t dim() const noexcept { return energies_.size(); }
    std::span<const double> energies() const noexcept { return energies_; }
    double ground() const noexcept { return energies_.front(); }
    double gap() const noexcept { return energies_[1] - energies_[0]; }

    ComplexMatrix hamiltonian() const { return ComplexMatrix::diagonal(energies_); }

private:
    std::vector<double> energies_;
};

struct StateTolerances {
    double hermitian = 1e-10;
    double trace = 1e-10;
    double negativity = 1e-12;
};

class QuantumState {
public:
    struct Diagonal {
        std::vector<double> populations;
    };
    struct Full {
        ComplexMatrix matrix;
    };

    // Both factories validate and throw ValidationError naming the violation.
    static QuantumState diagonal(std::vector<double> populations, const StateTolerances& tol = {});
    static QuantumState full(ComplexMatrix matrix, const StateTolerances& tol = {});

    std::size_t dim() const noexcept;
    bool is_diagonal_form() const noexcept { return std::holds_alternative<Diagonal>(form_); }
    const std::variant<Diagonal, Full>& form() const noexcept { return form_; }

    ComplexMatrix matrix() const;
    // ⟨j|ρ|j⟩ in the energy basis
    std::vector<double> populations() const;
    // Eigenvalues, clamped at 0 and renormalized to sum 1, sorted non-increasing.
    const std::vector<double>& spectrum() const noexcept { return spectrum_; }
    // Largest |ρ_jk|, j != k; 0 for the diagonal form.
    double max_off_diagonal() const;

private:
    QuantumState(std::variant<Diagonal, Full> form, std::vector<double> spectrum)
        : form_(std::move(form)), spectrum_(std::move(spectrum)) {}

    std::variant<Diagonal, Full> form_;
    std::vector<double> spectrum_;
};

struct ErgotropyReport {
    double initial_energy = 0.0;
    double passive_energy = 0.0;
    double ergotropy = 0.0;
    std::vector<double> passive_populations;  // r_1 >= r_2 >= ... >= r_d
};

// tr(ρ H) for an arbitrary diagonal Hamiltonian given by its levels.
double energy(const QuantumState& state, std::span<const double> levels);
double energy(const QuantumState& state, const BatterySpec& battery);

// Σ_j r_j ε_j with r sorted non-increasing (r need not be pre-sorted).
double passive_energy_of(std::span<const double> spectrum, std::span<const double> levels);

bool is_passive(const QuantumState& state, const BatterySpec& battery, double tol = 1e-10);

ErgotropyReport passive_state(const QuantumState& state, const BatterySpec& battery);

// U = Σ_j |j⟩⟨ψ_j| with ψ_j the eigenvector for the j-th largest eigenvalue.
// Ties keep the eigensolver's order (stable sort).
ComplexMatrix optimal_unitary(const QuantumState& state, const BatterySpec& battery);

} // namespace ergokit
