// Unit tests for the compressed n-copy spectra.

#include <doctest.h>

#include "ergokit/ensemble.hpp"
#include "ergokit/error.hpp"
#include "ergokit/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace ergokit;

namespace {

const BatterySpec kFig1{{0.0, 0.579, 1.0}};
const std::vector<double> kFig1Passive{0.538 / 0.999, 0.237 / 0.999, 0.224 / 0.999};
const std::vector<double> kFig1Inverted{0.224 / 0.999, 0.237 / 0.999, 0.538 / 0.999};

// e^(n) for the normalized convergence-figure spectrum, exact rational
// arithmetic over all compositions (mpmath, 40 digits).
constexpr double kE1 = 0.36158458458458458458;
constexpr double kE3 = 0.36038146784083378001;
constexpr double kE4 = 0.35850275228844882099;
constexpr double kE10 = 0.35531723248888044341;
constexpr double kE40 = 0.35353029261856247551;
constexpr double kAsymptote = 0.35329692782811148446;

std::vector<double> random_spectrum(std::size_t d, std::mt19937_64& rng) {
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> p(d);
    double total = 0.0;
    for (auto& x : p) total += (x = expo(rng));
    for (auto& x : p) x /= total;
    return p;
}

BatterySpec random_battery(std::size_t d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> gap(0.05, 1.5);
    std::vector<double> eps(d);
    double level = 0.0;
    for (auto& e : eps) level = e = level + gap(rng);
    return BatterySpec(eps);
}

} // namespace

TEST_CASE("composition_count") {
    CHECK(composition_count(40, 3) == 861.0);
    CHECK(composition_count(1, 5) == 5.0);
    CHECK(composition_count(6, 5) == 210.0);
    CHECK(largest_feasible_n(3, 100, 861.0) == 40);
    CHECK(largest_feasible_n(3, 100, 2.0) == 0);
}

TEST_CASE("build_level_table") {
    SUBCASE("single copy") {
        const auto t = build_level_table(kFig1Passive, kFig1, 1);
        REQUIRE(t.size() == 3);
        std::vector<double> probs, energies;
        for (const auto& e : t.entries()) {
            CHECK(e.log_mult == 0.0);
            probs.push_back(std::exp(e.log_prob));
            energies.push_back(e.energy);
        }
        std::sort(energies.begin(), energies.end());
        CHECK(energies == std::vector<double>{0.0, 0.579, 1.0});
        for (std::size_t i = 0; i < 3; ++i) {
            const auto k = t.composition(i);
            const auto j = static_cast<std::size_t>(std::find(k.begin(), k.end(), 1u) - k.begin());
            CHECK(probs[i] == doctest::Approx(kFig1Passive[j]).epsilon(1e-15));
        }
    }
    SUBCASE("two copies of three levels") {
        const auto t = build_level_table(kFig1Passive, kFig1, 2);
        REQUIRE(t.size() == 6);
        bool found = false;
        for (std::size_t i = 0; i < t.size(); ++i) {
            const auto k = t.composition(i);
            if (k[0] == 1 && k[1] == 1 && k[2] == 0) {
                found = true;
                const auto& e = t.entries()[i];
                CHECK(std::exp(e.log_mult) == doctest::Approx(2.0).epsilon(1e-15));
                CHECK(std::exp(e.log_prob) == doctest::Approx(kFig1Passive[0] * kFig1Passive[1]).epsilon(1e-15));
                CHECK(e.energy == 0.579);
            }
        }
        CHECK(found);
    }
    SUBCASE("deterministic spectrum") {
        const BatterySpec qubit({0.25, 1.0});
        const auto t = build_level_table(std::vector<double>{1.0, 0.0}, qubit, 7);
        int finite = 0;
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (std::isfinite(t.entries()[i].log_prob)) {
                ++finite;
                CHECK(t.composition(i)[0] == 7);
                CHECK(t.entries()[i].log_prob == 0.0);
                CHECK(t.entries()[i].energy == doctest::Approx(7 * 0.25));
            }
        }
        CHECK(finite == 1);
    }
    SUBCASE("mass and level-count invariants") {
        std::mt19937_64 rng(4);
        for (std::size_t d : {2u, 3u, 5u}) {
            for (int n : {1, 3, 9, 25}) {
                const auto spectrum = random_spectrum(d, rng);
                const auto t = build_level_table(spectrum, random_battery(d, rng), n);
                CHECK(t.size() == static_cast<std::size_t>(composition_count(n, d)));
                double mass = 0.0, count = 0.0;
                for (const auto& e : t.entries()) {
                    mass += std::exp(e.log_mult + e.log_prob);
                    count += std::exp(e.log_mult);
                }
                CHECK(std::abs(mass - 1.0) <= 1e-9);
                CHECK(std::abs(count / std::pow(static_cast<double>(d), n) - 1.0) <= 1e-9);
            }
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(build_level_table(std::vector<double>{0.5, 0.4, 0.1 - 1e-6}, kFig1, 2), ValidationError);
        CHECK_THROWS_AS(build_level_table(std::vector<double>{0.5, 0.5}, kFig1, 2), DimensionMismatch);
        EnsembleOptions opts;
        opts.max_compositions = 100;
        try {
            build_level_table(kFig1Passive, kFig1, 40, opts);
            FAIL("expected CapExceeded");
        } catch (const CapExceeded& e) {
            CHECK(e.required() == 861.0);
        }
    }
}

TEST_CASE("passive_energy_per_copy on the convergence-figure spectrum") {
    CHECK(passive_energy_per_copy(build_level_table(kFig1Passive, kFig1, 1)) == doctest::Approx(kE1).epsilon(1e-15));
    // ⊗²ρ is still passive for this spectrum: e(2) = e(1)
    CHECK(std::abs(passive_energy_per_copy(build_level_table(kFig1Passive, kFig1, 2)) - kE1) < 1e-15);
    CHECK(std::abs(passive_energy_per_copy(build_level_table(kFig1Passive, kFig1, 3)) - kE3) < 1e-14);
    CHECK(std::abs(passive_energy_per_copy(build_level_table(kFig1Passive, kFig1, 4)) - kE4) < 1e-14);
    CHECK(std::abs(passive_energy_per_copy(build_level_table(kFig1Passive, kFig1, 10)) - kE10) < 1e-14);
    CHECK(std::abs(passive_energy_per_copy(build_level_table(kFig1Passive, kFig1, 40)) - kE40) < 1e-13);
}

TEST_CASE("uniform spectrum gives the mean energy at every n") {
    const std::vector<double> uniform{1.0 / 3, 1.0 / 3, 1.0 / 3};
    for (int n : {1, 2, 5, 17}) {
        CHECK(passive_energy_per_copy(build_level_table(uniform, kFig1, n)) == doctest::Approx(1.579 / 3).epsilon(1e-13));
    }
}

TEST_CASE("brute_force_oracle") {
    CHECK(brute_force_oracle(kFig1Passive, kFig1, 1) == doctest::Approx(kE1).epsilon(1e-15));
    CHECK(brute_force_oracle(std::vector<double>{1.0, 0.0, 0.0}, kFig1, 6) == 0.0);
    EnsembleOptions opts;
    opts.max_oracle_levels = 1000;
    CHECK_THROWS_AS(brute_force_oracle(kFig1Passive, kFig1, 7, opts), CapExceeded);
}

TEST_CASE("compressed matching agrees with brute force") {
    std::mt19937_64 rng(42);
    auto sweep = [&](std::size_t d_max, int n_max) {
        for (std::size_t d = 2; d <= d_max; ++d) {
            for (int trial = 0; trial < 10; ++trial) {
                const auto spectrum = random_spectrum(d, rng);
                const auto battery = random_battery(d, rng);
                for (int n = 1; n <= n_max; ++n) {
                    const double fast = passive_energy_per_copy(build_level_table(spectrum, battery, n));
                    const double slow = brute_force_oracle(spectrum, battery, n);
                    CHECK(std::abs(fast - slow) <= 1e-10);
                }
            }
        }
    };
    sweep(3, 10);
    sweep(5, 6);
}

TEST_CASE("zero eigenvalues are skipped") {
    const std::vector<double> spectrum{0.6, 0.0, 0.4};
    for (int n = 1; n <= 8; ++n) {
        const double fast = passive_energy_per_copy(build_level_table(spectrum, kFig1, n));
        CHECK(std::abs(fast - brute_force_oracle(spectrum, kFig1, n)) <= 1e-12);
    }
}

TEST_CASE("result does not depend on how ties are ordered") {
    // Integer-spaced levels make many compositions share an energy; a
    // uniform pair of probabilities makes many share a probability.
    const BatterySpec ladder({0.0, 1.0, 2.0, 3.0});
    const std::vector<double> spectrum{0.4, 0.3, 0.3, 0.0};
    std::mt19937_64 rng(9);
    for (int n : {3, 6, 9}) {
        const auto t = build_level_table(spectrum, ladder, n);
        const double reference = passive_energy_per_copy(t) * n;
        const auto& entries = t.entries();
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<std::size_t> by_prob(t.size());
            std::iota(by_prob.begin(), by_prob.end(), std::size_t{0});
            std::shuffle(by_prob.begin(), by_prob.end(), rng);
            std::vector<std::size_t> by_energy = by_prob;
            std::shuffle(by_energy.begin(), by_energy.end(), rng);
            std::stable_sort(by_prob.begin(), by_prob.end(), [&](std::size_t a, std::size_t b) {
                return entries[a].log_prob > entries[b].log_prob;
            });
            std::stable_sort(by_energy.begin(), by_energy.end(), [&](std::size_t a, std::size_t b) {
                return entries[a].energy < entries[b].energy;
            });
            CHECK(std::abs(matched_energy(t, by_prob, by_energy) - reference) <= 1e-12 * n);
        }
    }
}

TEST_CASE("curve") {
    SUBCASE("convergence figure") {
        const auto c = curve(QuantumState::diagonal(kFig1Inverted), kFig1, 40);
        REQUIRE(c.n_max() == 40);
        CHECK(std::abs(c.asymptote - kAsymptote) < 1e-10);
        CHECK(c.e_at(1) == doctest::Approx(kE1).epsilon(1e-15));
        CHECK(std::abs(c.e_at(40) - kE40) < 1e-13);
        for (int n = 1; n <= 40; ++n) {
            CHECK(c.e_at(n) > c.asymptote);
            CHECK(c.w_at(n) == doctest::Approx(c.initial_per_copy_energy - c.e_at(n)));
        }
        const int powers[] = {1, 2, 4, 8, 16, 32};
        for (std::size_t i = 1; i < 6; ++i) CHECK(c.gap_at(powers[i]) <= c.gap_at(powers[i - 1]) + 1e-15);
        CHECK(c.gap_at(32) < c.gap_at(1));
    }
    SUBCASE("single-copy consistency") {
        std::mt19937_64 rng(12);
        for (int trial = 0; trial < 20; ++trial) {
            const auto battery = random_battery(4, rng);
            const auto rho = QuantumState::diagonal(random_spectrum(4, rng));
            const auto c = curve(rho, battery, 1);
            CHECK(std::abs(c.e_at(1) - passive_state(rho, battery).passive_energy) <= 1e-15);
        }
    }
    SUBCASE("passive qubit is completely passive") {
        const BatterySpec qubit({0.0, 1.0});
        const auto c = curve(QuantumState::diagonal({0.7, 0.3}), qubit, 30);
        for (int n = 1; n <= 30; ++n) CHECK(std::abs(c.gap_at(n)) <= 1e-9);
    }
    SUBCASE("maximally mixed state") {
        const auto c = curve(QuantumState::diagonal({1.0 / 3, 1.0 / 3, 1.0 / 3}), kFig1, 12);
        for (int n = 1; n <= 12; ++n) {
            CHECK(c.e_at(n) == doctest::Approx(1.579 / 3).epsilon(1e-13));
            CHECK(std::abs(c.w_at(n)) <= 1e-13);
        }
    }
    SUBCASE("threaded evaluation matches sequential bit for bit") {
        EnsembleOptions seq, par;
        seq.threads = 1;
        par.threads = 4;
        const auto rho = QuantumState::diagonal(kFig1Inverted);
        CHECK(curve(rho, kFig1, 25, seq).e == curve(rho, kFig1, 25, par).e);
    }
    SUBCASE("cap reports the largest feasible n") {
        EnsembleOptions opts;
        opts.max_compositions = 861;
        try {
            curve(QuantumState::diagonal(kFig1Inverted), kFig1, 45, opts);
            FAIL("expected CapExceeded");
        } catch (const CapExceeded& e) {
            CHECK(e.largest_feasible_n() == 40);
        }
    }
}

TEST_CASE("curve bounds on random instances") {
    std::mt19937_64 rng(2718);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t d = 2 + static_cast<std::size_t>(trial % 3);
        const auto battery = random_battery(d, rng);
        const auto rho = QuantumState::diagonal(random_spectrum(d, rng));
        const int n_max = 16;
        const auto c = curve(rho, battery, n_max);
        for (int n = 1; n <= n_max; ++n) {
            CHECK(c.e_at(n) >= c.asymptote - 1e-9);
            for (int k = 2; k * n <= n_max; ++k) CHECK(c.e_at(k * n) <= c.e_at(n) + 1e-12);
            if (n < n_max) CHECK(c.e_at(n + 1) <= (n * c.e_at(n) + c.e_at(1)) / (n + 1) + 1e-12);
        }
    }
}

TEST_CASE("complete_passivity_check") {
    SUBCASE("Gibbs state") {
        const auto g = gibbs_state(kFig1, 1.3);
        const auto diag = complete_passivity_check(g.state(), kFig1, 12);
        CHECK(diag.is_gibbs_like);
        CHECK_FALSE(diag.first_active_n.has_value());
        CHECK(diag.fit_beta == doctest::Approx(1.3).epsilon(1e-10));
        CHECK(diag.fit_residual < 1e-12);
    }
    SUBCASE("convergence-figure passive state becomes active at three copies") {
        const auto diag = complete_passivity_check(QuantumState::diagonal(kFig1Passive), kFig1, 8);
        CHECK_FALSE(diag.is_gibbs_like);
        REQUIRE(diag.first_active_n.has_value());
        CHECK(*diag.first_active_n == 3);
        CHECK(diag.per_copy_work[2] == doctest::Approx(kE1 - kE3).epsilon(1e-12));
        CHECK(diag.fit_residual > 1e-3);
    }
    SUBCASE("pure ground state") {
        const auto diag = complete_passivity_check(QuantumState::diagonal({1.0, 0.0, 0.0}), kFig1, 10);
        CHECK(diag.is_gibbs_like);
        CHECK(std::isinf(diag.fit_beta));
    }
    SUBCASE("coherent state is rejected") {
        const auto rho = QuantumState::full(ComplexMatrix{{0.6, 0.1}, {0.1, 0.4}});
        CHECK_THROWS_AS(complete_passivity_check(rho, BatterySpec({0.0, 1.0}), 4), NotDiagonal);
    }
}
