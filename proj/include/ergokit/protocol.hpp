// protocol.hpp: unitary work-extraction protocols
//
// Controls are piecewise constant, so the time-ordered exponential of
// H + V(t) is the ordered product of segment exponentials:
//   U = exp(−i Δt_K (H + V_K)) ⋯ exp(−i Δt_1 (H + V_1)).

#pragma once

#include "ergokit/battery.hpp"
#include "ergokit/ensemble.hpp"
#include "ergokit/numkernel.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace ergokit {

struct ControlSegment {
    double duration = 0.0;
    ComplexMatrix control;
};

class ControlSchedule {
public:
    ControlSchedule() = default;
    // Throws ValidationError for non-positive durations, NotHermitian for
    // controls, DimensionMismatch when segment sizes differ.
    explicit ControlSchedule(std::vector<ControlSegment> segments, double hermitian_tol = 1e-10);

    const std::vector<ControlSegment>& segments() const noexcept { return segments_; }
    bool empty() const noexcept { return segments_.empty(); }
    double total_duration() const noexcept;
    // 0 for an empty schedule
    std::size_t dim() const noexcept { return segments_.empty() ? 0 : segments_.front().control.dim(); }

private:
    std::vector<ControlSegment> segments_;
};

struct ProtocolResult {
    QuantumState final_state;
    ComplexMatrix total_unitary;
    double work = 0.0;
};

// Levels of H^(n) = Σ_j H_j on ⊗^n C^d, in lexicographic product order.
std::vector<double> n_copy_levels(const BatterySpec& battery, int n);

// ⊗^n ρ; stays diagonal when ρ is.
QuantumState tensor_power(const QuantumState& state, int n);

// `levels` is the diagonal Hamiltonian (single battery or n_copy_levels).
ProtocolResult evolve(const QuantumState& state, std::span<const double> levels,
                      const ControlSchedule& schedule);
ProtocolResult evolve(const QuantumState& state, const BatterySpec& battery,
                      const ControlSchedule& schedule);

// Idealized quench ρ → UρU†. Throws NotUnitary when ‖U†U − I‖_max > tol.
ProtocolResult apply_unitary(const QuantumState& state, std::span<const double> levels,
                             const ComplexMatrix& u, double tol = 1e-8);
ProtocolResult apply_unitary(const QuantumState& state, const BatterySpec& battery,
                             const ComplexMatrix& u, double tol = 1e-8);

// Best work from U_1 ⊗ … ⊗ U_n on ⊗^n ρ: n · ergotropy(ρ).
double best_product_work(const QuantumState& state, const BatterySpec& battery, int n);

// n · w^n_max − best_product_work
double entangling_advantage(const QuantumState& state, const BatterySpec& battery, int n,
                            const EnsembleOptions& opts = {});

// Haar-random unitary: Gram–Schmidt on a complex Gaussian matrix with the
// phases of the R diagonal absorbed.
ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng);
// Hermitian matrix with i.i.d. Gaussian entries of the given scale.
ComplexMatrix random_hermitian(std::size_t dim, double scale, std::mt19937_64& rng);
// U diag(p) U† with p uniform on the simplex and U Haar-random.
QuantumState random_state(std::size_t dim, std::mt19937_64& rng);

} // namespace ergokit
