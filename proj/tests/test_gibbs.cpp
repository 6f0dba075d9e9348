// Unit tests for Gibbs states, entropy and entropy matching.

#include <doctest.h>

#include "ergokit/error.hpp"
#include "ergokit/gibbs.hpp"
#include "ergokit/protocol.hpp"

#include <cmath>
#include <random>

using namespace ergokit;

namespace {

const BatterySpec kFig1{{0.0, 0.579, 1.0}};
const std::vector<double> kFig1Passive{0.538 / 0.999, 0.237 / 0.999, 0.224 / 0.999};
const std::vector<double> kFig1Inverted{0.224 / 0.999, 0.237 / 0.999, 0.538 / 0.999};

// 40-digit reference values (mpmath findroot on S(ω_β) − S(ρ)).
constexpr double kFig1Entropy = 1.0098510004387486802;
constexpr double kFig1Beta = 1.0362896865662639225;
constexpr double kFig1GibbsEnergy = 0.35329692782811148446;
constexpr double kFig1Bound = 0.32260197107078741444;
constexpr double kFig1Ergotropy = 0.31431431431431431431;
// β = 1 on the same battery
constexpr double kBeta1Entropy = 1.0157163593878962259;
constexpr double kBeta1Energy = 0.35905787454589611572;

} // namespace

TEST_CASE("entropy") {
    CHECK(entropy(QuantumState::diagonal({1.0, 0.0, 0.0})) == 0.0);
    CHECK(entropy(QuantumState::diagonal({1.0 / 3, 1.0 / 3, 1.0 / 3})) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
    CHECK(entropy(QuantumState::diagonal(kFig1Passive)) == doctest::Approx(kFig1Entropy).epsilon(1e-14));
    // basis independent
    std::mt19937_64 rng(8);
    const ComplexMatrix u = random_unitary(3, rng);
    auto rho = u * ComplexMatrix::diagonal(kFig1Passive) * u.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    CHECK(std::abs(entropy(QuantumState::full(rho)) - kFig1Entropy) < 1e-12);
}

TEST_CASE("gibbs_state") {
    SUBCASE("infinite temperature") {
        const auto g = gibbs_state(kFig1, 0.0);
        for (double p : g.populations) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-15));
        CHECK(g.partition_function == 3.0);
    }
    SUBCASE("ground-state limit") {
        const auto g = gibbs_state(kFig1, 1e6);
        CHECK(g.populations[0] == 1.0);
        CHECK(g.populations[1] <= 1e-100);
        CHECK(g.populations[2] <= 1e-100);
        CHECK(g.energy == 0.0);
    }
    SUBCASE("beta = 1 against high-precision reference") {
        const auto g = gibbs_state(kFig1, 1.0);
        CHECK(g.populations[0] == doctest::Approx(0.51858128978657271415).epsilon(1e-14));
        CHECK(g.populations[1] == doctest::Approx(0.2906433151247771262).epsilon(1e-14));
        CHECK(g.entropy == doctest::Approx(kBeta1Entropy).epsilon(1e-14));
        CHECK(g.energy == doctest::Approx(kBeta1Energy).epsilon(1e-14));
        CHECK(g.partition_function == doctest::Approx(1.0 + std::exp(-0.579) + std::exp(-1.0)).epsilon(1e-15));
    }
    SUBCASE("shift keeps large offsets finite") {
        const BatterySpec far({1e4, 1e4 + 1.0});
        const auto g = gibbs_state(far, 3.0);
        CHECK(g.populations[0] == doctest::Approx(1.0 / (1.0 + std::exp(-3.0))));
        CHECK(g.shift == 1e4);
    }
    SUBCASE("invalid beta") {
        CHECK_THROWS_AS(gibbs_state(kFig1, -1.0), ValidationError);
        CHECK_THROWS_AS(gibbs_state(kFig1, INFINITY), ValidationError);
    }
}

TEST_CASE("entropy and energy decrease strictly with beta") {
    const BatterySpec batteries[] = {kFig1, BatterySpec({0.0, 1.0}), BatterySpec({-2.0, -1.5, 0.0, 0.1, 3.0})};
    for (const auto& b : batteries) {
        double prev_s = INFINITY, prev_e = INFINITY;
        for (double beta = 0.0; beta <= 20.0; beta += 0.25) {
            const auto g = gibbs_state(b, beta);
            CHECK(g.entropy < prev_s);
            CHECK(g.energy < prev_e);
            prev_s = g.entropy;
            prev_e = g.energy;
        }
    }
}

TEST_CASE("match_entropy") {
    SUBCASE("maximum entropy gives beta = 0") {
        const auto m = match_entropy(kFig1, std::log(3.0));
        CHECK(m.beta == 0.0);
        CHECK(m.gibbs_energy == doctest::Approx(1.579 / 3).epsilon(1e-15));
        CHECK_FALSE(m.saturated);
    }
    SUBCASE("convergence-figure state") {
        const auto m = match_entropy(kFig1, kFig1Entropy);
        CHECK(std::abs(m.gibbs_entropy - kFig1Entropy) <= 1e-10);
        CHECK(m.beta == doctest::Approx(kFig1Beta).epsilon(1e-10));
        CHECK(std::abs(m.gibbs_energy - kFig1GibbsEnergy) < 1e-10);
        // populations strictly decreasing, normalized
        CHECK(m.populations[0] > m.populations[1]);
        CHECK(m.populations[1] > m.populations[2]);
        CHECK(std::abs(m.populations[0] + m.populations[1] + m.populations[2] - 1.0) < 1e-12);
    }
    SUBCASE("qubit: entropy fixes the ordered spectrum") {
        const BatterySpec qubit({0.0, 1.0});
        const double s = -(0.7 * std::log(0.7) + 0.3 * std::log(0.3));
        const auto m = match_entropy(qubit, s);
        CHECK(m.populations[0] == doctest::Approx(0.7).epsilon(1e-9));
        CHECK(m.gibbs_energy == doctest::Approx(0.3).epsilon(1e-9));
        CHECK(m.beta == doctest::Approx(std::log(7.0 / 3.0)).epsilon(1e-9));
    }
    SUBCASE("zero entropy saturates at beta_cap") {
        const auto m = match_entropy(kFig1, 0.0);
        CHECK(m.saturated);
        CHECK(m.beta == doctest::Approx(std::log(1e15) / 0.579));
        CHECK(std::abs(m.gibbs_energy) <= 1e-12);
    }
    SUBCASE("out of range") {
        CHECK_THROWS_AS(match_entropy(kFig1, -1e-6), TargetOutOfRange);
        CHECK_THROWS_AS(match_entropy(kFig1, std::log(3.0) + 1e-6), TargetOutOfRange);
        CHECK_NOTHROW(match_entropy(kFig1, std::log(3.0) + 1e-13));
        CHECK_NOTHROW(match_entropy(kFig1, -1e-13));
    }
    SUBCASE("round trip through gibbs_state") {
        for (double beta = 0.0; beta <= 50.0; beta += 0.5) {
            const auto g = gibbs_state(kFig1, beta);
            const auto m = match_entropy(kFig1, g.entropy);
            CHECK(std::abs(m.beta - beta) <= 1e-6);
        }
    }
}

TEST_CASE("thermodynamic_bound") {
    const BatterySpec qubit({0.0, 1.0});
    CHECK(std::abs(thermodynamic_bound(QuantumState::diagonal({0.7, 0.3}), qubit)) <= 1e-9);
    CHECK(std::abs(thermodynamic_bound(QuantumState::diagonal({1.0 / 3, 1.0 / 3, 1.0 / 3}), kFig1)) <= 1e-12);

    const auto rho = QuantumState::diagonal(kFig1Inverted);
    const double bound = thermodynamic_bound(rho, kFig1);
    CHECK(std::abs(bound - kFig1Bound) < 1e-10);
    CHECK(bound > kFig1Ergotropy);
}

TEST_CASE("bound chain on random states") {
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> dim(2, 6);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto d = static_cast<std::size_t>(dim(rng));
        std::vector<double> eps(d);
        double level = 0.0;
        for (auto& e : eps) level = e = level + 0.05 + std::abs(normal(rng));
        const BatterySpec battery(eps);
        const auto rho = random_state(d, rng);
        const auto rep = passive_state(rho, battery);
        const auto m = match_entropy(battery, entropy(rho));
        CHECK(rep.initial_energy >= rep.passive_energy - 1e-12);
        CHECK(rep.passive_energy >= m.gibbs_energy - 1e-8);
        if (d == 2) CHECK(std::abs(rep.ergotropy - (rep.initial_energy - m.gibbs_energy)) <= 1e-8);
    }
}
