#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "antikz/errors.hpp"
#include "antikz/evolve.hpp"
#include "antikz/observables.hpp"

using namespace antikz;
constexpr double kPi = std::numbers::pi;

namespace {

std::vector<ModeResult> ground_states(const ModelParams& p) {
    std::vector<ModeResult> out;
    for (double k : momenta(p.n_sites))
        out.push_back({k, ModeDensityMatrix::pure(ground_state(k, p.tau, p))});
    return out;
}

std::vector<ModeResult> mixed_states(const ModelParams& p) {
    std::vector<ModeResult> out;
    for (double k : momenta(p.n_sites)) {
        ModeDensityMatrix m;
        m.rho = 0.5 * Eigen::Matrix2cd::Identity();
        out.push_back({k, m});
    }
    return out;
}

} // namespace

TEST_CASE("excitation_density limits") {
    ModelParams p{64, 1.0, 10.0, 0.0, Protocol::annealing()};
    SUBCASE("adiabatic limit: 0") {
        CHECK(excitation_density(ground_states(p), p) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("completely mixed: 1/2") {
        CHECK(excitation_density(mixed_states(p), p) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("N=4, one ground and one orthogonal mode: 1/2") {
        ModelParams p4{4, 1.0, 10.0, 0.0, Protocol::annealing()};
        const auto ks = momenta(4);
        std::vector<ModeResult> states;
        states.push_back({ks[0], ModeDensityMatrix::pure(ground_state(ks[0], p4.tau, p4))});
        const Eigen::Vector2cd g1 = ground_state(ks[1], p4.tau, p4);
        const Eigen::Vector2cd perp{-std::conj(g1[1]), std::conj(g1[0])};
        states.push_back({ks[1], ModeDensityMatrix::pure(perp)});
        CHECK(excitation_density(states, p4) == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("mismatched mode set is an error") {
        auto states = ground_states(p);
        states.pop_back();
        CHECK_THROWS_AS(excitation_density(states, p), SimulationError);
        states = ground_states(p);
        states[3].k += 1e-6;
        CHECK_THROWS_AS(excitation_density(states, p), SimulationError);
    }
}

TEST_CASE("residual_energy limits") {
    ModelParams p{64, 1.0, 10.0, 0.0, Protocol::annealing()};
    SUBCASE("ground projectors: 0") {
        CHECK(residual_energy(ground_states(p), p) == doctest::Approx(0.0).epsilon(1e-12));
    }
    SUBCASE("completely mixed at g=1: 1") {
        // Mode energies are +-2 Lambda, so each mode contributes the gap midpoint.
        CHECK(residual_energy(mixed_states(p), p) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("bounded by n_W times the largest mode gap") {
        ModelParams pr{64, 1.0, 20.0, 5e-3, Protocol::annealing()};
        const auto states = evolve_all(pr, IntegratorConfig{});
        double max_gap = 0.0;
        for (double k : momenta(pr.n_sites)) {
            const auto c = coefficients(k, pr);
            max_gap = std::max(max_gap, 2.0 * std::hypot(c.hz(pr.tau), c.hx(pr.tau)));
        }
        CHECK(residual_energy(states, pr) <=
              excitation_density(states, pr) * max_gap + 1e-12);
    }
}

TEST_CASE("energy_spread limits") {
    SUBCASE("pure eigenstates: 0") {
        // The sqrt of the cancellation eps^2 - <H>^2 leaves ~1e-8 roundoff.
        ModelParams p{64, 1.0, 10.0, 0.0, Protocol::annealing()};
        CHECK(energy_spread(ground_states(p), p) == doctest::Approx(0.0).epsilon(1e-7));
    }
    SUBCASE("completely mixed at g=1, N=1024: sqrt(2N)/N") {
        ModelParams p{1024, 1.0, 10.0, 0.0, Protocol::annealing()};
        CHECK(energy_spread(mixed_states(p), p) ==
              doctest::Approx(std::sqrt(2048.0) / 1024.0).epsilon(1e-12));
    }
}

TEST_CASE("noise-free n_W and Q decrease with tau") {
    ModelParams base{64, 1.0, 1.0, 0.0, Protocol::annealing()};
    double prev_n = 2.0, prev_q = 1e9;
    for (double tau : {8.0, 16.0, 32.0, 64.0}) {
        ModelParams p = base;
        p.tau = tau;
        const auto states = evolve_all(p, IntegratorConfig{});
        const double n = excitation_density(states, p);
        const double q = residual_energy(states, p);
        CHECK(n < prev_n);
        CHECK(q < prev_q);
        prev_n = n;
        prev_q = q;
    }
}

TEST_CASE("noisy n_W(tau) has a single interior minimum") {
    ModelParams base{128, 1.0, 1.0, 1e-2, Protocol::annealing()};
    std::vector<double> taus = {2, 3.2, 5, 8, 13, 20, 32, 50, 80, 130, 200, 320};
    std::vector<double> ns;
    for (double tau : taus) {
        ModelParams p = base;
        p.tau = tau;
        ns.push_back(excitation_density(evolve_all(p, IntegratorConfig{}), p));
    }
    int interior_minima = 0;
    for (std::size_t i = 1; i + 1 < ns.size(); ++i)
        if (ns[i] < ns[i - 1] && ns[i] < ns[i + 1]) ++interior_minima;
    CHECK(interior_minima == 1);
    // Anti-KZ signature: the curve rises again at long ramps.
    CHECK(ns.back() > *std::min_element(ns.begin(), ns.end()));
}

TEST_CASE("record assembly") {
    ModelParams p{16, 1.0, 5.0, 1e-3, Protocol::annealing()};
    const auto states = evolve_all(p, IntegratorConfig{});
    const auto rec = make_record(states, p, Method::MasterEquation);
    CHECK(rec.tau == p.tau);
    CHECK(rec.w2 == p.w2);
    CHECK(rec.n_w >= 0.0);
    CHECK(rec.n_w <= 1.0);
    CHECK(rec.q >= -1e-9);
    CHECK(rec.de >= 0.0);
    CHECK(method_name(rec.method) == std::string("master-equation"));
}
