#include "antikz/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "antikz/model.hpp"
#include "antikz/summation.hpp"

namespace antikz {

namespace {
constexpr double kPi = std::numbers::pi;
}

double landau_zener(double x) {
    if (x < 0.0) throw std::invalid_argument("landau_zener: x must be >= 0");
    return std::exp(-2.0 * kPi * x);
}

double kayanuma(double x) {
    if (x < 0.0) throw std::invalid_argument("kayanuma: x must be >= 0");
    return 0.5 * (1.0 + std::exp(-4.0 * kPi * x));
}

double mode_adiabaticity(double k, double tau) {
    if (!(k > 0.0 && k < kPi)) throw std::invalid_argument("mode_adiabaticity: k must lie in (0, pi)");
    if (!(tau > 0.0)) throw std::invalid_argument("mode_adiabaticity: tau must be > 0");
    return tau * k * k;
}

double kayanuma_density(double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("kayanuma_density: tau must be > 0");
    return 0.5 + 1.0 / (4.0 * kPi * std::sqrt(tau));
}

double kayanuma_density_discrete(int n_sites, double tau) {
    const std::vector<double> ks = momenta(n_sites);
    std::vector<double> p(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i)
        p[i] = kayanuma(mode_adiabaticity(ks[i], tau));
    return 2.0 / n_sites * pairwise_sum(p);
}

} // namespace antikz
