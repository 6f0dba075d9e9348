// protocol.cpp: schedules, time-ordered evolution, n-copy helpers

#include "ergokit/protocol.hpp"

#include "ergokit/error.hpp"

#include <cmath>
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

ProtocolResult finish(const QuantumState& state, std::span<const double> levels, ComplexMatrix u) {
    ComplexMatrix rho = u * state.matrix() * u.adjoint();
    // Remove the rounding-level anti-Hermitian part.
    rho = 0.5 * (rho + rho.adjoint());
    const double before = energy(state, levels);
    QuantumState final_state = QuantumState::full(std::move(rho));
    const double after = energy(final_state, levels);
    return ProtocolResult{std::move(final_state), std::move(u), before - after};
}

} // namespace

ControlSchedule::ControlSchedule(std::vector<ControlSegment> segments, double hermitian_tol)
    : segments_(std::move(segments)) {
    for (std::size_t k = 0; k < segments_.size(); ++k) {
        const auto& seg = segments_[k];
        if (!std::isfinite(seg.duration) || !(seg.duration > 0.0)) {
            throw ValidationError("schedule segment " + std::to_string(k) + ": duration " +
                                  fmt(seg.duration) + " must be > 0");
        }
        if (seg.control.dim() != segments_.front().control.dim()) {
            throw DimensionMismatch("schedule segment " + std::to_string(k) + ": control is " +
                                    std::to_string(seg.control.dim()) + "x" +
                                    std::to_string(seg.control.dim()) + ", expected " +
                                    std::to_string(segments_.front().control.dim()));
        }
        if (!is_hermitian(seg.control, hermitian_tol)) {
            throw NotHermitian("schedule segment " + std::to_string(k) + ": control is not Hermitian");
        }
    }
}

double ControlSchedule::total_duration() const noexcept {
    double tau = 0.0;
    for (const auto& seg : segments_) tau += seg.duration;
    return tau;
}

std::vector<double> n_copy_levels(const BatterySpec& battery, int n) {
    if (n < 1) throw ValidationError("n_copy_levels: n must be >= 1");
    std::vector<double> levels{0.0};
    for (int copy = 0; copy < n; ++copy) {
        std::vector<double> next;
        next.reserve(levels.size() * battery.dim());
        for (double base : levels)
            for (double eps : battery.energies()) next.push_back(base + eps);
        levels = std::move(next);
    }
    return levels;
}

QuantumState tensor_power(const QuantumState& state, int n) {
    if (n < 1) throw ValidationError("tensor_power: n must be >= 1");
    if (state.is_diagonal_form()) {
        const auto pops = state.populations();
        std::vector<double> out{1.0};
        for (int copy = 0; copy < n; ++copy) {
            std::vector<double> next;
            next.reserve(out.size() * pops.size());
            for (double base : out)
                for (double p : pops) next.push_back(base * p);
            out = std::move(next);
        }
        return QuantumState::diagonal(std::move(out));
    }
    const ComplexMatrix rho = state.matrix();
    ComplexMatrix out = rho;
    for (int copy = 1; copy < n; ++copy) out = kron(out, rho);
    return QuantumState::full(std::move(out));
}

ProtocolResult evolve(const QuantumState& state, std::span<const double> levels,
                      const ControlSchedule& schedule) {
    const std::size_t d = levels.size();
    if (state.dim() != d) {
        throw DimensionMismatch("evolve: state dimension " + std::to_string(state.dim()) +
                                " differs from Hamiltonian dimension " + std::to_string(d));
    }
    if (!schedule.empty() && schedule.dim() != d) {
        throw DimensionMismatch("evolve: controls are " + std::to_string(schedule.dim()) + "x" +
                                std::to_string(schedule.dim()) + " but the Hamiltonian has " +
                                std::to_string(d) + " levels");
    }
    const ComplexMatrix h = ComplexMatrix::diagonal(levels);
    ComplexMatrix u = ComplexMatrix::identity(d);
    for (const auto& seg : schedule.segments()) {
        u = expm_hermitian_generator(h + seg.control, seg.duration) * u;
    }
    return finish(state, levels, std::move(u));
}

ProtocolResult evolve(const QuantumState& state, const BatterySpec& battery, const ControlSchedule& schedule) {
    return evolve(state, battery.energies(), schedule);
}

ProtocolResult apply_unitary(const QuantumState& state, std::span<const double> levels,
                             const ComplexMatrix& u, double tol) {
    if (state.dim() != levels.size() || u.dim() != levels.size()) {
        throw DimensionMismatch("apply_unitary: state, unitary and Hamiltonian dimensions differ");
    }
    const double residual = unitarity_residual(u);
    if (!(residual <= tol)) {
        throw NotUnitary("apply_unitary: ‖U†U − I‖_max = " + fmt(residual) + " exceeds " + fmt(tol));
    }
    return finish(state, levels, u);
}

ProtocolResult apply_unitary(const QuantumState& state, const BatterySpec& battery, const ComplexMatrix& u,
                             double tol) {
    return apply_unitary(state, battery.energies(), u, tol);
}

double best_product_work(const QuantumState& state, const BatterySpec& battery, int n) {
    if (n < 1) throw ValidationError("best_product_work: n must be >= 1");
    return static_cast<double>(n) * passive_state(state, battery).ergotropy;
}

double entangling_advantage(const QuantumState& state, const BatterySpec& battery, int n,
                            const EnsembleOptions& opts) {
    if (n < 2) throw ValidationError("entangling_advantage: n must be >= 2");
    const EnsembleCurve c = curve(state, battery, n, opts);
    return static_cast<double>(n) * c.w_at(n) - best_product_work(state, battery, n);
}

ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix z(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) z(r, c) = cplx(normal(rng), normal(rng));

    // Modified Gram–Schmidt on columns; R has a positive diagonal, which
    // makes Q Haar-distributed.
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t prev = 0; prev < c; ++prev) {
            cplx proj = 0.0;
            for (std::size_t r = 0; r < dim; ++r) proj += std::conj(z(r, prev)) * z(r, c);
            for (std::size_t r = 0; r < dim; ++r) z(r, c) -= proj * z(r, prev);
        }
        double norm = 0.0;
        for (std::size_t r = 0; r < dim; ++r) norm += std::norm(z(r, c));
        norm = std::sqrt(norm);
        for (std::size_t r = 0; r < dim; ++r) z(r, c) /= norm;
    }
    return z;
}

ComplexMatrix random_hermitian(std::size_t dim, double scale, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, scale);
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        m(r, r) = normal(rng);
        for (std::size_t c = r + 1; c < dim; ++c) {
            m(r, c) = cplx(normal(rng), normal(rng));
            m(c, r) = std::conj(m(r, c));
        }
    }
    return m;
}

QuantumState random_state(std::size_t dim, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> p(dim);
    double total = 0.0;
    for (auto& x : p) total += (x = expo(rng));
    for (auto& x : p) x /= total;
    const ComplexMatrix u = random_unitary(dim, rng);
    ComplexMatrix rho = u * ComplexMatrix::diagonal(p) * u.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    return QuantumState::full(std::move(rho));
}

} // namespace ergokit
