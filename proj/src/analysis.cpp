#include "antikz/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "antikz/errors.hpp"
#include "antikz/summation.hpp"

namespace antikz {

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("linear_fit: need >= 2 matching points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) { sx += x[i]; sy += y[i]; }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("linear_fit: degenerate x values");
    LinearFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ssr += r * r;
    }
    f.r2 = (syy > 0.0) ? 1.0 - ssr / syy : 1.0;
    return f;
}

FitResult fit_power_law(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size())
        throw std::invalid_argument("fit_power_law: mismatched point counts");
    if (x.size() < 3)
        throw std::invalid_argument("fit_power_law: need at least 3 points");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_power_law: points must be strictly positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    const LinearFit lf = linear_fit(lx, ly);

    // Standard errors of slope and intercept from the residual variance.
    const double dn = static_cast<double>(n);
    double mx = 0;
    for (double v : lx) mx += v;
    mx /= dn;
    double sxx = 0, ssr = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        const double r = ly[i] - (lf.intercept + lf.slope * lx[i]);
        ssr += r * r;
    }
    const double s2 = ssr / (dn - 2.0);

    FitResult out;
    out.exponent = lf.slope;
    out.prefactor = std::exp(lf.intercept);
    out.exponent_err = std::sqrt(s2 / sxx);
    out.prefactor_err = out.prefactor * std::sqrt(s2 * (1.0 / dn + mx * mx / sxx));
    out.r2 = lf.r2;
    return out;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2)
        throw std::invalid_argument("log_grid: need 0 < lo < hi and n >= 2");
    std::vector<double> g(static_cast<std::size_t>(n));
    const double step = std::log(hi / lo) / (n - 1);
    for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = lo * std::exp(step * i);
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> default_w2_grid() {
    // Half-decade log grid over [1e-5, 1e-3]: every optimum lies well inside
    // tau in [4, 2000] and the tau_opt fit averages over the oscillatory
    // fine structure of n_W(tau).
    return {1e-5, 1.78e-5, 3.16e-5, 5.62e-5, 1e-4, 1.78e-4, 3.16e-4, 5.62e-4, 1e-3};
}

void SweepSpec::validate() const {
    base.validate();
    auto check = [](const std::vector<double>& g, const char* name) {
        if (g.empty()) throw std::invalid_argument(std::string("sweep.") + name + ": empty grid");
        for (std::size_t i = 1; i < g.size(); ++i)
            if (!(g[i] > g[i - 1]))
                throw std::invalid_argument(std::string("sweep.") + name +
                                            ": grid must be strictly increasing");
    };
    check(tau_grid, "tau");
    if (!w2_grid.empty()) check(w2_grid, "w2");
}

HeatingRate heating_rate(std::span<const ObservableRecord> noisy,
                         std::span<const ObservableRecord> baseline) {
    if (noisy.size() != baseline.size() || noisy.empty())
        throw std::invalid_argument("heating_rate: grids must match and be nonempty");
    std::vector<double> taus, dn;
    for (std::size_t i = 0; i < noisy.size(); ++i) {
        if (std::abs(noisy[i].tau - baseline[i].tau) > 1e-12 * std::max(1.0, noisy[i].tau))
            throw std::invalid_argument("heating_rate: tau grids differ at index " +
                                        std::to_string(i));
        if (noisy[i].w2 * noisy[i].tau < 1.0) { // fast-ramp window
            taus.push_back(noisy[i].tau);
            dn.push_back(noisy[i].n_w - baseline[i].n_w);
        }
    }
    if (taus.empty())
        throw SimulationError("heating_rate: empty window after the W^2 tau < 1 restriction");

    double num = 0, den = 0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        num += dn[i] * taus[i];
        den += taus[i] * taus[i];
    }
    HeatingRate hr;
    hr.rate = num / den;
    double ss = 0, ref = 0;
    for (std::size_t i = 0; i < taus.size(); ++i) {
        const double r = dn[i] - hr.rate * taus[i];
        ss += r * r;
        ref += dn[i] * dn[i];
    }
    hr.residual = (ref > 0.0) ? std::sqrt(ss / ref) : 0.0;
    return hr;
}

TauOptimum minimize_on_grid(const std::function<double(double)>& f,
                            std::span<const double> tau_grid) {
    if (tau_grid.size() < 3)
        throw std::invalid_argument("find_tau_opt: need a tau grid with >= 3 points");
    std::vector<double> vals(tau_grid.size());
    for (std::size_t i = 0; i < tau_grid.size(); ++i) vals[i] = f(tau_grid[i]);

    // Global grid minimum; exact ties keep the smaller tau.
    std::size_t imin = 0;
    for (std::size_t i = 1; i < vals.size(); ++i)
        if (vals[i] < vals[imin]) imin = i;
    if (imin == 0 || imin + 1 == vals.size()) {
        const auto slope_sign = [&](std::size_t a, std::size_t b) {
            return vals[b] > vals[a] ? "+" : (vals[b] < vals[a] ? "-" : "0");
        };
        throw SimulationError(std::string("find_tau_opt: minimum not bracketed by the grid "
                                          "(boundary slopes ") +
                              slope_sign(0, 1) + " at start, " +
                              slope_sign(vals.size() - 2, vals.size() - 1) + " at end)");
    }

    // Golden-section refinement in log(tau); converges to a relative tau
    // tolerance of 1e-2. Equal values keep the smaller tau.
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = std::log(tau_grid[imin - 1]);
    double b = std::log(tau_grid[imin + 1]);
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = f(std::exp(x1));
    double f2 = f(std::exp(x2));
    while (b - a > std::log(1.01)) {
        if (f1 <= f2) { // tie -> keep the left (smaller tau) bracket
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(std::exp(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(std::exp(x2));
        }
    }
    const double xm = (f1 <= f2) ? x1 : x2;
    const double fm = std::min(f1, f2);
    return {std::exp(xm), fm};
}

TauOptimum find_tau_opt(double w2, const SweepSpec& search) {
    search.validate();
    if (!(w2 > 0.0))
        throw std::invalid_argument("find_tau_opt: W^2 must be > 0 (n_W is monotone at W^2 = 0)");
    auto n_w_at = [&](double tau) {
        ModelParams p = search.base;
        p.tau = tau;
        p.w2 = w2;
        return excitation_density(evolve_all(p, search.integrator), p);
    };
    return minimize_on_grid(n_w_at, search.tau_grid);
}

TauOptScaling fit_tau_opt_scaling_with(std::span<const double> w2_grid,
                                       const std::function<TauOptimum(double)>& optimum_of) {
    if (w2_grid.size() < 4)
        throw std::invalid_argument("fit_tau_opt_scaling: need >= 4 noise strengths");
    const double decades = std::log10(w2_grid.back() / w2_grid.front());
    if (decades < 1.5)
        throw std::invalid_argument("fit_tau_opt_scaling: W^2 grid must span >= 1.5 decades");
    TauOptScaling out;
    std::vector<double> taus;
    for (double w2 : w2_grid) {
        out.w2.push_back(w2);
        out.optima.push_back(optimum_of(w2));
        taus.push_back(out.optima.back().tau_opt);
    }
    out.fit = fit_power_law(out.w2, taus);
    return out;
}

TauOptScaling fit_tau_opt_scaling(std::span<const double> w2_grid, const SweepSpec& base) {
    return fit_tau_opt_scaling_with(
        w2_grid, [&](double w2) { return find_tau_opt(w2, base); });
}

double quench_time_map(double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("quench_time_map: tau must be > 0");
    return tau / 4.0;
}

} // namespace antikz
