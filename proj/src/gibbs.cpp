// gibbs.cpp: Gibbs states and entropy matching

#include "ergokit/gibbs.hpp"

#include "ergokit/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
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

} // namespace

double shannon_entropy(std::span<const double> probabilities) {
    double s = 0.0;
    for (double p : probabilities)
        if (p > 0.0) s -= p * std::log(p);
    return s;
}

double entropy(const QuantumState& state) { return shannon_entropy(state.spectrum()); }

GibbsState gibbs_state(const BatterySpec& battery, double beta) {
    if (!std::isfinite(beta) || beta < 0.0) {
        throw ValidationError("gibbs_state: beta must be finite and >= 0, got " + fmt(beta));
    }
    const auto levels = battery.energies();
    const std::size_t d = levels.size();
    GibbsState g;
    g.beta = beta;
    g.shift = levels[0];

    // Z_shifted = 1 + Σ_{j>1} w_j; logs via log1p keep ln p_1 accurate near 1.
    double excited = 0.0;
    for (std::size_t j = 1; j < d; ++j) excited += std::exp(-beta * (levels[j] - g.shift));
    g.partition_function = 1.0 + excited;
    const double log_z = std::log1p(excited);

    g.populations.resize(d);
    double excess_energy = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        const double log_p = -beta * (levels[j] - g.shift) - log_z;
        const double p = std::exp(log_p);
        g.populations[j] = p;
        if (p > 0.0) g.entropy -= p * log_p;
        excess_energy += p * (levels[j] - g.shift);
    }
    g.energy = g.shift + excess_energy;
    return g;
}

GibbsMatch match_entropy(const BatterySpec& battery, double target_entropy, const MatchOptions& opts) {
    const double ln_d = std::log(static_cast<double>(battery.dim()));
    if (!(target_entropy >= -1e-12 && target_entropy <= ln_d + 1e-12)) {
        throw TargetOutOfRange("match_entropy: target entropy " + fmt(target_entropy) +
                               " outside [0, ln d = " + fmt(ln_d) + "]");
    }
    if (!(opts.tol > 0.0)) throw ValidationError("match_entropy: tol must be > 0");
    const double target = std::clamp(target_entropy, 0.0, ln_d);

    auto finish = [&](const GibbsState& g, bool saturated) {
        GibbsMatch m;
        m.beta = g.beta;
        m.populations = g.populations;
        m.partition_function = g.partition_function;
        m.gibbs_energy = g.energy;
        m.gibbs_entropy = g.entropy;
        m.target_entropy = target_entropy;
        m.saturated = saturated;
        return m;
    };

    const GibbsState hot = gibbs_state(battery, 0.0);
    if (target >= hot.entropy - 1e-14) return finish(hot, false);

    const double beta_cap = std::log(1.0 / opts.tol_pop) / battery.gap();
    const GibbsState cold = gibbs_state(battery, beta_cap);
    if (target < cold.entropy) return finish(cold, true);

    double lo = 0.0, hi = 1.0;
    while (gibbs_state(battery, hi).entropy > target) {
        lo = hi;
        hi *= 2.0;
    }
    // Run to full precision in β; the entropy tolerance is checked afterwards.
    for (int it = 0; it < 2000; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (gibbs_state(battery, mid).entropy > target) lo = mid;
        else hi = mid;
    }
    const GibbsState g_lo = gibbs_state(battery, lo);
    const GibbsState g_hi = gibbs_state(battery, hi);
    const GibbsState& best =
        std::abs(g_lo.entropy - target) <= std::abs(g_hi.entropy - target) ? g_lo : g_hi;
    if (std::abs(best.entropy - target) > opts.tol) {
        throw NoConvergence("match_entropy: entropy mismatch " + fmt(best.entropy - target) +
                            " exceeds tol " + fmt(opts.tol));
    }
    return finish(best, false);
}

double thermodynamic_bound(const QuantumState& state, const BatterySpec& battery, const MatchOptions& opts) {
    const double initial = energy(state, battery);
    return initial - match_entropy(battery, entropy(state), opts).gibbs_energy;
}

} // namespace ergokit
