#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "antikz/analysis.hpp"
#include "antikz/errors.hpp"

using namespace antikz;

TEST_CASE("KzmTheory beta") {
    KzmTheory ising;
    CHECK(ising.beta() == doctest::Approx(0.5).epsilon(1e-15));
    KzmTheory generic{2.0, 0.67, 2.1};
    CHECK(generic.beta() ==
          doctest::Approx(2.0 * 0.67 / (1.0 + 2.1 * 0.67)).epsilon(1e-15));
}

TEST_CASE("fit_power_law") {
    SUBCASE("exact power law is recovered") {
        std::vector<double> x = {1, 10, 100}, y;
        for (double v : x) y.push_back(3.0 / std::sqrt(v));
        const auto fit = fit_power_law(x, y);
        CHECK(fit.exponent == doctest::Approx(-0.5).epsilon(1e-12));
        CHECK(fit.prefactor == doctest::Approx(3.0).epsilon(1e-12));
        CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(fit.exponent_err < 1e-12);
    }
    SUBCASE("constant data has zero exponent") {
        std::vector<double> x = {1, 2, 4, 8}, y = {5, 5, 5, 5};
        const auto fit = fit_power_law(x, y);
        CHECK(fit.exponent == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(fit.prefactor == doctest::Approx(5.0).epsilon(1e-12));
    }
    SUBCASE("scale equivariance") {
        std::vector<double> x = {2, 5, 11, 23}, y = {0.9, 0.4, 0.22, 0.12};
        const auto f1 = fit_power_law(x, y);
        std::vector<double> xs = x;
        const double s = 7.3;
        for (double& v : xs) v *= s;
        const auto f2 = fit_power_law(xs, y);
        CHECK(f2.exponent == doctest::Approx(f1.exponent).epsilon(1e-12));
        CHECK(f2.prefactor ==
              doctest::Approx(f1.prefactor * std::pow(s, -f1.exponent)).epsilon(1e-10));
    }
    SUBCASE("rejects bad input") {
        std::vector<double> x = {1, 2}, y = {1, 2};
        CHECK_THROWS_AS(fit_power_law(x, y), std::invalid_argument);
        std::vector<double> x3 = {1, 2, 3}, y3 = {1, -2, 3};
        CHECK_THROWS_AS(fit_power_law(x3, y3), std::invalid_argument);
    }
}

TEST_CASE("heating_rate") {
    auto records = [](const std::vector<double>& taus, const std::vector<double>& n,
                      double w2) {
        std::vector<ObservableRecord> out;
        for (std::size_t i = 0; i < taus.size(); ++i)
            out.push_back({taus[i], w2, n[i], 0.0, 0.0, Method::MasterEquation});
        return out;
    };
    const std::vector<double> taus = {2, 4, 8, 16, 32};

    SUBCASE("exact linear data") {
        std::vector<double> noisy, base;
        for (double t : taus) {
            base.push_back(0.1 / std::sqrt(t));
            noisy.push_back(base.back() + 0.002 * t);
        }
        const auto hr = heating_rate(records(taus, noisy, 1e-3), records(taus, base, 0.0));
        CHECK(hr.rate == doctest::Approx(0.002).epsilon(1e-12));
        CHECK(hr.residual < 1e-12);
    }
    SUBCASE("quadratic contamination biases the slope by at most eps*tau_max") {
        const double r = 0.002, eps = 1e-5;
        std::vector<double> noisy, base;
        for (double t : taus) {
            base.push_back(0.0);
            noisy.push_back(r * t + eps * t * t);
        }
        const auto hr = heating_rate(records(taus, noisy, 1e-3), records(taus, base, 0.0));
        CHECK(std::abs(hr.rate - r) <= eps * taus.back());
    }
    SUBCASE("window restriction W^2 tau < 1") {
        // With w2 = 0.1 only tau < 10 survives; make the excluded points absurd.
        std::vector<double> noisy = {0.02, 0.04, 0.08, 100.0, 100.0};
        std::vector<double> base = {0, 0, 0, 0, 0};
        const auto hr = heating_rate(records(taus, noisy, 0.1), records(taus, base, 0.0));
        CHECK(hr.rate == doctest::Approx(0.01).epsilon(1e-12));
    }
    SUBCASE("empty window is an error") {
        std::vector<double> n = {1, 1, 1, 1, 1}, b = {0, 0, 0, 0, 0};
        CHECK_THROWS_AS(heating_rate(records(taus, n, 10.0), records(taus, b, 0.0)),
                        SimulationError);
    }
    SUBCASE("mismatched grids are an error") {
        auto noisy = records(taus, {1, 1, 1, 1, 1}, 1e-3);
        auto base = records({2, 4, 8, 16, 33}, {0, 0, 0, 0, 0}, 0.0);
        CHECK_THROWS_AS(heating_rate(noisy, base), std::invalid_argument);
    }
}

TEST_CASE("minimize_on_grid on the two-term model") {
    // f(tau) = r tau + c tau^(-1/2) has its minimum at (c/(2r))^(2/3).
    const double r = 0.01, c = 1.0;
    auto f = [&](double tau) { return r * tau + c / std::sqrt(tau); };
    const auto grid = log_grid(1.0, 200.0, 12);
    const auto opt = minimize_on_grid(f, grid);
    const double expected = std::pow(c / (2.0 * r), 2.0 / 3.0);
    CHECK(expected == doctest::Approx(13.572).epsilon(1e-3)); // 50^(2/3)
    CHECK(opt.tau_opt == doctest::Approx(expected).epsilon(0.01));
    CHECK(opt.n_min == doctest::Approx(f(expected)).epsilon(1e-4));

    SUBCASE("works for any positive (r, c)") {
        for (double rr : {1e-3, 0.3}) {
            for (double cc : {0.2, 5.0}) {
                auto g = [&](double tau) { return rr * tau + cc / std::sqrt(tau); };
                const double want = std::pow(cc / (2.0 * rr), 2.0 / 3.0);
                const auto got = minimize_on_grid(g, log_grid(want / 20, want * 20, 15));
                CHECK(got.tau_opt == doctest::Approx(want).epsilon(0.01));
            }
        }
    }
    SUBCASE("monotone data is a bracketing error") {
        auto g = [](double tau) { return 1.0 / std::sqrt(tau); };
        CHECK_THROWS_AS(minimize_on_grid(g, grid), SimulationError);
        auto h = [](double tau) { return tau; };
        CHECK_THROWS_AS(minimize_on_grid(h, grid), SimulationError);
    }
    SUBCASE("exact ties keep the smaller tau") {
        std::vector<double> flat_grid = {1, 2, 3, 4, 5};
        auto g = [](double tau) { return (tau < 1.5 || tau > 4.5) ? 1.0 : 0.0; };
        const auto got = minimize_on_grid(g, flat_grid);
        CHECK(got.tau_opt <= 2.0 + 1e-9);
    }
}

TEST_CASE("find_tau_opt") {
    SUBCASE("W^2 = 0 is rejected: no interior minimum") {
        SweepSpec s;
        s.tau_grid = log_grid(2, 100, 8);
        s.base = ModelParams{16, 1.0, 1.0, 0.0, Protocol::annealing()};
        CHECK_THROWS_AS(find_tau_opt(0.0, s), std::invalid_argument);
    }
    SUBCASE("locates the anti-KZ minimum of a small chain") {
        SweepSpec s;
        s.tau_grid = log_grid(1.5, 200, 12);
        s.base = ModelParams{64, 1.0, 1.0, 0.0, Protocol::annealing()};
        const auto opt = find_tau_opt(1e-2, s);
        CHECK(opt.tau_opt > s.tau_grid.front());
        CHECK(opt.tau_opt < s.tau_grid.back());
        // Below both neighbors at 2x spacing.
        auto n_at = [&](double tau) {
            ModelParams p = s.base;
            p.tau = tau;
            p.w2 = 1e-2;
            return excitation_density(evolve_all(p, s.integrator), p);
        };
        CHECK(opt.n_min <= n_at(opt.tau_opt / 2) + 1e-12);
        CHECK(opt.n_min <= n_at(opt.tau_opt * 2) + 1e-12);
    }
}

TEST_CASE("fit_tau_opt_scaling on synthetic optima") {
    // tau_opt = (c/(2 r))^(2/3) with r = W^2 gives exponent exactly -2/3.
    auto synthetic = [](double w2) {
        return TauOptimum{std::pow(1.0 / (2.0 * w2), 2.0 / 3.0), 0.0};
    };
    std::vector<double> w2s = {1e-4, 1e-3, 1e-2, 1e-1};
    const auto sc = fit_tau_opt_scaling_with(w2s, synthetic);
    CHECK(sc.fit.exponent == doctest::Approx(-2.0 / 3.0).epsilon(1e-10));
    CHECK(sc.fit.r2 == doctest::Approx(1.0).epsilon(1e-12));

    SUBCASE("preconditions") {
        std::vector<double> too_few = {1e-3, 3e-3, 1e-2};
        CHECK_THROWS_AS(fit_tau_opt_scaling_with(too_few, synthetic),
                        std::invalid_argument);
        std::vector<double> narrow = {1e-3, 2e-3, 4e-3, 8e-3};
        CHECK_THROWS_AS(fit_tau_opt_scaling_with(narrow, synthetic),
                        std::invalid_argument);
    }
}

TEST_CASE("quench_time_map") {
    CHECK(quench_time_map(100.0) == doctest::Approx(25.0).epsilon(1e-15));
    CHECK(quench_time_map(4.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(quench_time_map(0.0), std::invalid_argument);

    SUBCASE("linearization remainder of B/J about the crossing") {
        // (1-2x)/(1+2x) - (1-4x) = 8x^2/(1+2x) exactly, with x = dt/tau.
        const double x = 1e-3;
        const double remainder = (1.0 - 2.0 * x) / (1.0 + 2.0 * x) - (1.0 - 4.0 * x);
        CHECK(remainder == doctest::Approx(8.0 * x * x / (1.0 + 2.0 * x)).epsilon(1e-12));
        CHECK(std::abs(remainder) < 1e-5);
    }
}

TEST_CASE("grids") {
    const auto g = log_grid(4.0, 2000.0, 10);
    CHECK(g.size() == 10);
    CHECK(g.front() == doctest::Approx(4.0));
    CHECK(g.back() == doctest::Approx(2000.0));
    for (std::size_t i = 1; i < g.size(); ++i)
        CHECK(g[i] / g[i - 1] == doctest::Approx(g[1] / g[0]).epsilon(1e-10));

    const auto w2s = default_w2_grid();
    CHECK(w2s.size() >= 4);
    CHECK(std::log10(w2s.back() / w2s.front()) >= 1.5);
    for (std::size_t i = 1; i < w2s.size(); ++i) CHECK(w2s[i] > w2s[i - 1]);

    SweepSpec bad;
    bad.base = ModelParams{8, 1.0, 1.0, 0.0, Protocol::annealing()};
    bad.tau_grid = {1.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
