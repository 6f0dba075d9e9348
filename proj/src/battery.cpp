// battery.cpp: battery model, passive states, ergotropy

#include "ergokit/battery.hpp"

#include "ergokit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

namespace ergokit {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

// Indices of `values` ordered by non-increasing value; ties keep input order.
std::vector<std::size_t> descending_order(std::span<const double> values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
    return idx;
}

std::vector<double> clamp_and_normalize(std::vector<double> values, double negativity) {
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (values[j] < -negativity) {
            throw ValidationError("state: eigenvalue " + std::to_string(j) + " = " + fmt(values[j]) +
                                  " is negative beyond " + fmt(negativity));
        }
        values[j] = std::max(values[j], 0.0);
    }
    const double total = std::accumulate(values.begin(), values.end(), 0.0);
    for (auto& v : values) v /= total;
    std::stable_sort(values.begin(), values.end(), std::greater<>());
    return values;
}

void check_trace(double trace, double tol) {
    if (!std::isfinite(trace) || std::abs(trace - 1.0) > tol) {
        throw ValidationError("state: trace " + fmt(trace) + " differs from 1 by more than " + fmt(tol));
    }
}

void check_dims(const QuantumState& state, std::size_t levels) {
    if (state.dim() != levels) {
        throw DimensionMismatch("state has dimension " + std::to_string(state.dim()) +
                                " but the Hamiltonian has " + std::to_string(levels) + " levels");
    }
}

} // namespace

BatterySpec::BatterySpec(std::vector<double> energies) : energies_(std::move(energies)) {
    if (energies_.size() < 2) {
        throw ValidationError("battery: need at least 2 energy levels, got " +
                              std::to_string(energies_.size()));
    }
    for (std::size_t j = 0; j < energies_.size(); ++j) {
        if (!std::isfinite(energies_[j])) {
            throw ValidationError("battery: energy " + std::to_string(j) + " is not finite");
        }
        if (j > 0 && !(energies_[j] > energies_[j - 1])) {
            throw ValidationError("battery: energies must be strictly increasing (index " +
                                  std::to_string(j) + ": " + fmt(energies_[j]) + " <= " +
                                  fmt(energies_[j - 1]) + ")");
        }
    }
}

QuantumState QuantumState::diagonal(std::vector<double> populations, const StateTolerances& tol) {
    if (populations.empty()) throw ValidationError("state: empty population vector");
    for (std::size_t j = 0; j < populations.size(); ++j) {
        if (!std::isfinite(populations[j])) {
            throw ValidationError("state: population " + std::to_string(j) + " is not finite");
        }
    }
    check_trace(std::accumulate(populations.begin(), populations.end(), 0.0), tol.trace);
    auto spectrum = clamp_and_normalize(populations, tol.negativity);
    for (auto& p : populations) p = std::max(p, 0.0);
    return QuantumState(Diagonal{std::move(populations)}, std::move(spectrum));
}

QuantumState QuantumState::full(ComplexMatrix matrix, const StateTolerances& tol) {
    for (const auto& z : matrix.data()) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw ValidationError("state: matrix has a non-finite entry");
        }
    }
    if (!is_hermitian(matrix, tol.hermitian)) {
        throw ValidationError("state: matrix is not Hermitian within " + fmt(tol.hermitian));
    }
    check_trace(matrix.trace().real(), tol.trace);
    const HermitianEig eig = eig_hermitian(matrix, EigOptions{tol.hermitian});
    auto spectrum = clamp_and_normalize(eig.eigenvalues, tol.negativity);
    return QuantumState(Full{std::move(matrix)}, std::move(spectrum));
}

std::size_t QuantumState::dim() const noexcept {
    if (const auto* d = std::get_if<Diagonal>(&form_)) return d->populations.size();
    return std::get<Full>(form_).matrix.dim();
}

ComplexMatrix QuantumState::matrix() const {
    if (const auto* d = std::get_if<Diagonal>(&form_)) return ComplexMatrix::diagonal(d->populations);
    return std::get<Full>(form_).matrix;
}

std::vector<double> QuantumState::populations() const {
    if (const auto* d = std::get_if<Diagonal>(&form_)) return d->populations;
    return std::get<Full>(form_).matrix.real_diagonal();
}

double QuantumState::max_off_diagonal() const {
    const auto* f = std::get_if<Full>(&form_);
    if (!f) return 0.0;
    double m = 0.0;
    const std::size_t n = f->matrix.dim();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (r != c) m = std::max(m, std::abs(f->matrix(r, c)));
    return m;
}

double energy(const QuantumState& state, std::span<const double> levels) {
    check_dims(state, levels.size());
    const auto pops = state.populations();
    double e = 0.0;
    for (std::size_t j = 0; j < levels.size(); ++j) e += pops[j] * levels[j];
    return e;
}

double energy(const QuantumState& state, const BatterySpec& battery) {
    return energy(state, battery.energies());
}

double passive_energy_of(std::span<const double> spectrum, std::span<const double> levels) {
    if (spectrum.size() != levels.size()) {
        throw DimensionMismatch("passive_energy_of: spectrum and levels differ in length");
    }
    std::vector<double> r(spectrum.begin(), spectrum.end());
    std::stable_sort(r.begin(), r.end(), std::greater<>());
    std::vector<double> e(levels.begin(), levels.end());
    std::stable_sort(e.begin(), e.end());
    double total = 0.0;
    for (std::size_t j = 0; j < r.size(); ++j) total += r[j] * e[j];
    return total;
}

bool is_passive(const QuantumState& state, const BatterySpec& battery, double tol) {
    check_dims(state, battery.dim());
    if (state.max_off_diagonal() > tol) return false;
    const auto pops = state.populations();
    for (std::size_t j = 0; j + 1 < pops.size(); ++j)
        if (pops[j + 1] > pops[j] + tol) return false;
    return true;
}

ErgotropyReport passive_state(const QuantumState& state, const BatterySpec& battery) {
    check_dims(state, battery.dim());
    ErgotropyReport report;
    report.initial_energy = energy(state, battery);
    report.passive_populations = state.spectrum();
    const auto levels = battery.energies();
    for (std::size_t j = 0; j < levels.size(); ++j)
        report.passive_energy += report.passive_populations[j] * levels[j];
    report.ergotropy = report.initial_energy - report.passive_energy;
    return report;
}

ComplexMatrix optimal_unitary(const QuantumState& state, const BatterySpec& battery) {
    check_dims(state, battery.dim());
    const std::size_t d = state.dim();
    ComplexMatrix u(d);
    if (const auto* diag = std::get_if<QuantumState::Diagonal>(&state.form())) {
        // Eigenvectors are basis vectors: U is a permutation.
        const auto order = descending_order(diag->populations);
        for (std::size_t j = 0; j < d; ++j) u(j, order[j]) = 1.0;
        return u;
    }
    const HermitianEig eig = eig_hermitian(state.matrix());
    const auto order = descending_order(eig.eigenvalues);
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) u(j, k) = std::conj(eig.eigenvectors(k, order[j]));
    return u;
}

} // namespace ergokit
