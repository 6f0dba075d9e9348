// ensemble.cpp: compressed n-copy spectra and passive energies per copy

#include "ergokit/ensemble.hpp"

#include "ergokit/error.hpp"
#include "ergokit/gibbs.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>

namespace ergokit {

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os.precision(17);
    os << x;
    return os.str();
}

void validate_spectrum(std::span<const double> spectrum, const BatterySpec& battery) {
    if (spectrum.size() != battery.dim()) {
        throw DimensionMismatch("spectrum has " + std::to_string(spectrum.size()) +
                                " entries but the battery has " + std::to_string(battery.dim()) +
                                " levels");
    }
    double total = 0.0;
    for (std::size_t j = 0; j < spectrum.size(); ++j) {
        if (!std::isfinite(spectrum[j]) || spectrum[j] < 0.0) {
            throw ValidationError("spectrum entry " + std::to_string(j) + " = " + fmt(spectrum[j]) +
                                  " is not a probability");
        }
        total += spectrum[j];
    }
    if (std::abs(total - 1.0) > 1e-10) {
        throw ValidationError("spectrum sums to " + fmt(total) + ", not 1");
    }
}

} // namespace

void WeightedLevelTable::push(std::span<const std::uint32_t> counts, const LevelEntry& entry) {
    if (counts.size() != d_) throw DimensionMismatch("WeightedLevelTable: composition length");
    counts_.insert(counts_.end(), counts.begin(), counts.end());
    entries_.push_back(entry);
}

double composition_count(int n, std::size_t d) {
    if (n < 0 || d == 0) return 0.0;
    long double c = 1.0L;
    for (std::size_t k = 1; k < d; ++k) c = c * static_cast<long double>(n + static_cast<long double>(k)) /
                                             static_cast<long double>(k);
    return static_cast<double>(std::roundl(c));
}

int largest_feasible_n(std::size_t d, int n_max, double max_compositions) {
    int best = 0;
    for (int n = 1; n <= n_max; ++n) {
        if (composition_count(n, d) > max_compositions) break;
        best = n;
    }
    return best;
}

WeightedLevelTable build_level_table(std::span<const double> spectrum, const BatterySpec& battery, int n,
                                     const EnsembleOptions& opts) {
    if (n < 1) throw ValidationError("build_level_table: n must be >= 1");
    validate_spectrum(spectrum, battery);
    const std::size_t d = battery.dim();
    const double count = composition_count(n, d);
    if (count > opts.max_compositions) {
        throw CapExceeded("build_level_table: " + fmt(count) + " compositions exceed the cap " +
                              fmt(opts.max_compositions),
                          count);
    }

    const auto levels = battery.energies();
    std::vector<double> log_r(d);
    for (std::size_t j = 0; j < d; ++j)
        log_r[j] = spectrum[j] > 0.0 ? std::log(spectrum[j]) : -std::numeric_limits<double>::infinity();
    const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);

    WeightedLevelTable table(n, d);
    std::vector<std::uint32_t> k(d, 0);
    k[d - 1] = static_cast<std::uint32_t>(n);  // start at (0, …, 0, n)

    // Visit compositions in colex order: repeatedly move one unit from the
    // last non-zero slot j>0 toward slot j−1 and reset the tail.
    while (true) {
        LevelEntry e;
        e.log_mult = log_n_fact;
        for (std::size_t j = 0; j < d; ++j) {
            if (k[j] == 0) continue;
            const double kj = static_cast<double>(k[j]);
            e.log_prob += kj * log_r[j];
            e.energy += kj * levels[j];
            e.log_mult -= std::lgamma(kj + 1.0);
        }
        table.push(k, e);

        std::size_t j = d - 1;
        while (j > 0 && k[j] == 0) --j;
        if (j == 0) break;  // all mass in slot 0: done
        const std::uint32_t tail = k[j] - 1;
        k[j] = 0;
        ++k[j - 1];
        k[d - 1] += tail;
    }
    return table;
}

double matched_energy(const WeightedLevelTable& table, std::span<const std::size_t> prob_order,
                      std::span<const std::size_t> energy_order) {
    const auto& entries = table.entries();
    if (prob_order.size() != entries.size() || energy_order.size() != entries.size()) {
        throw DimensionMismatch("matched_energy: orders must cover every table entry");
    }
    long double total = 0.0L;
    std::size_t i = 0, j = 0;
    long double rem_p = 0.0L, rem_e = 0.0L;
    bool have_p = false, have_e = false;

    while (true) {
        if (!have_p) {
            if (i == prob_order.size()) break;
            const auto& pe = entries[prob_order[i]];
            // Mass-zero groups sit at the tail and contribute nothing.
            if (pe.log_prob == -std::numeric_limits<double>::infinity()) break;
            rem_p = expl(static_cast<long double>(pe.log_mult));
            have_p = true;
        }
        if (!have_e) {
            if (j == energy_order.size()) break;
            rem_e = expl(static_cast<long double>(entries[energy_order[j]].log_mult));
            have_e = true;
        }
        const long double take = std::min(rem_p, rem_e);
        const auto& pe = entries[prob_order[i]];
        const auto& ee = entries[energy_order[j]];
        total += take * expl(static_cast<long double>(pe.log_prob)) *
                 static_cast<long double>(ee.energy);
        rem_p -= take;
        rem_e -= take;
        if (rem_p <= 0.0L) {
            have_p = false;
            ++i;
        }
        if (rem_e <= 0.0L) {
            have_e = false;
            ++j;
        }
    }
    return static_cast<double>(total);
}

double passive_energy_per_copy(const WeightedLevelTable& table) {
    const auto& entries = table.entries();
    std::vector<std::size_t> by_prob(entries.size());
    std::iota(by_prob.begin(), by_prob.end(), std::size_t{0});
    std::vector<std::size_t> by_energy = by_prob;

    std::sort(by_prob.begin(), by_prob.end(), [&](std::size_t a, std::size_t b) {
        if (entries[a].log_prob != entries[b].log_prob) return entries[a].log_prob > entries[b].log_prob;
        if (entries[a].energy != entries[b].energy) return entries[a].energy < entries[b].energy;
        return a < b;
    });
    std::sort(by_energy.begin(), by_energy.end(), [&](std::size_t a, std::size_t b) {
        if (entries[a].energy != entries[b].energy) return entries[a].energy < entries[b].energy;
        return a < b;
    });
    return matched_energy(table, by_prob, by_energy) / static_cast<double>(table.copies());
}

double brute_force_oracle(std::span<const double> spectrum, const BatterySpec& battery, int n,
                          const EnsembleOptions& opts) {
    if (n < 1) throw ValidationError("brute_force_oracle: n must be >= 1");
    validate_spectrum(spectrum, battery);
    const std::size_t d = battery.dim();
    const double level_count = std::pow(static_cast<double>(d), n);
    if (level_count > opts.max_oracle_levels) {
        throw CapExceeded("brute_force_oracle: d^n = " + fmt(level_count) + " exceeds the cap " +
                              fmt(opts.max_oracle_levels),
                          level_count);
    }
    const auto levels = battery.energies();
    const auto size = static_cast<std::size_t>(level_count);
    std::vector<double> probs{1.0}, energies{0.0};
    probs.reserve(size);
    energies.reserve(size);
    for (int copy = 0; copy < n; ++copy) {
        std::vector<double> next_p, next_e;
        next_p.reserve(probs.size() * d);
        next_e.reserve(probs.size() * d);
        for (std::size_t a = 0; a < probs.size(); ++a)
            for (std::size_t j = 0; j < d; ++j) {
                next_p.push_back(probs[a] * spectrum[j]);
                next_e.push_back(energies[a] + levels[j]);
            }
        probs = std::move(next_p);
        energies = std::move(next_e);
    }
    std::sort(probs.begin(), probs.end(), std::greater<>());
    std::sort(energies.begin(), energies.end());
    long double dot = 0.0L;
    for (std::size_t a = 0; a < probs.size(); ++a)
        dot += static_cast<long double>(probs[a]) * static_cast<long double>(energies[a]);
    return static_cast<double>(dot / n);
}

EnsembleCurve curve(const QuantumState& state, const BatterySpec& battery, int n_max,
                    const EnsembleOptions& opts) {
    if (n_max < 1) throw ValidationError("curve: n_max must be >= 1");
    const std::size_t d = battery.dim();
    if (state.dim() != d) {
        throw DimensionMismatch("curve: state dimension " + std::to_string(state.dim()) +
                                " differs from battery dimension " + std::to_string(d));
    }
    const double count = composition_count(n_max, d);
    if (count > opts.max_compositions) {
        const int feasible = largest_feasible_n(d, n_max, opts.max_compositions);
        throw CapExceeded("curve: n = " + std::to_string(n_max) + " needs " + fmt(count) +
                              " compositions (cap " + fmt(opts.max_compositions) +
                              "); largest feasible n is " + std::to_string(feasible),
                          count, feasible);
    }

    EnsembleCurve out;
    out.initial_per_copy_energy = energy(state, battery);
    const GibbsMatch match = match_entropy(battery, entropy(state));
    out.asymptote = match.gibbs_energy;
    out.beta = match.beta;

    const std::vector<double>& spectrum = state.spectrum();
    out.e.assign(static_cast<std::size_t>(n_max), 0.0);

    // Points are independent; each worker writes only its own slots, so the
    // result is identical to the sequential loop.
    unsigned workers = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(n_max));
    std::atomic<int> next{1};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    auto work = [&] {
        try {
            for (int n = next++; n <= n_max && !failed; n = next++) {
                out.e[static_cast<std::size_t>(n - 1)] =
                    passive_energy_per_copy(build_level_table(spectrum, battery, n, opts));
            }
        } catch (...) {
            if (!failed.exchange(true)) failure = std::current_exception();
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    out.w.resize(out.e.size());
    for (std::size_t k = 0; k < out.e.size(); ++k) out.w[k] = out.initial_per_copy_energy - out.e[k];
    return out;
}

PassivityDiagnostic complete_passivity_check(const QuantumState& state, const BatterySpec& battery,
                                             int n_max, double tol, const EnsembleOptions& opts) {
    if (n_max < 2) throw ValidationError("complete_passivity_check: n_max must be >= 2");
    if (state.dim() != battery.dim()) {
        throw DimensionMismatch("complete_passivity_check: state and battery dimensions differ");
    }
    if (state.max_off_diagonal() > 1e-10) {
        throw NotDiagonal("complete_passivity_check: state is not diagonal in the energy basis");
    }

    PassivityDiagnostic diag;
    const double initial = energy(state, battery);
    const std::vector<double>& spectrum = state.spectrum();
    for (int n = 1; n <= n_max; ++n) {
        const double w = initial - passive_energy_per_copy(build_level_table(spectrum, battery, n, opts));
        diag.per_copy_work.push_back(w);
        if (w > tol && !diag.first_active_n) diag.first_active_n = n;
    }
    diag.is_gibbs_like = !diag.first_active_n.has_value();

    const auto pops = state.populations();
    const auto levels = battery.energies();
    const bool ground_only =
        std::all_of(pops.begin() + 1, pops.end(), [](double p) { return p <= 0.0; });
    if (ground_only) {
        diag.fit_beta = std::numeric_limits<double>::infinity();
        diag.fit_residual = 0.0;
    } else if (std::any_of(pops.begin(), pops.end(), [](double p) { return p <= 0.0; })) {
        diag.fit_beta = std::numeric_limits<double>::quiet_NaN();
        diag.fit_residual = std::numeric_limits<double>::infinity();
    } else {
        const std::size_t d = pops.size();
        double mx = 0.0, my = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            mx += levels[j];
            my += std::log(pops[j]);
        }
        mx /= static_cast<double>(d);
        my /= static_cast<double>(d);
        double sxy = 0.0, sxx = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            sxy += (levels[j] - mx) * (std::log(pops[j]) - my);
            sxx += (levels[j] - mx) * (levels[j] - mx);
        }
        const double slope = sxy / sxx;
        double ss = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            const double r = std::log(pops[j]) - (my + slope * (levels[j] - mx));
            ss += r * r;
        }
        diag.fit_beta = -slope;
        diag.fit_residual = std::sqrt(ss / static_cast<double>(d));
    }
    return diag;
}

} // namespace ergokit
