#include "ehrelay/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "ehrelay/quadrature.hpp"

namespace ehrelay::oracles {

double bessel_k_integral(int n, double x) {
    // cosh(nt) e^{-x cosh t} = (e^{nt - x cosh t} + e^{-nt - x cosh t}) / 2
    auto integrand = [n, x](double t) {
        double const c = x * std::cosh(t);
        return 0.5 * (std::exp(n * t - c) + std::exp(-n * t - c));
    };
    // Beyond t_max the exponent n t - x cosh t is below -800.
    double t_max = 1.0;
    while (n * t_max - x * std::cosh(t_max) > -800.0) {
        t_max += 0.5;
    }
    return integrate(integrand, 0.0, t_max, {.abs_tol = 0.0, .rel_tol = 1e-14}).value;
}

double beta_simpson(double upper, int i, double eps1, int panels) {
    if (panels % 2 != 0) {
        ++panels;
    }
    double const rate = 2.0 * i + 1.0;
    auto f = [rate, eps1](double y) { return y <= 0.0 ? 0.0 : std::exp(-rate * y - eps1 / y); };
    double const h = upper / panels;
    double odd = 0.0;
    double even = 0.0;
    for (int k = 1; k < panels; ++k) {
        (k % 2 == 1 ? odd : even) += f(k * h);
    }
    return h / 3.0 * (f(0.0) + 4.0 * odd + 2.0 * even + f(upper));
}

SampleMoment sum_largest_exponentials_mean(int n, int m, int samples, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::exponential_distribution<double> expo(1.0);
    std::vector<double> draws(static_cast<std::size_t>(n));
    double sum = 0.0;
    double sum_sq = 0.0;
    for (int s = 0; s < samples; ++s) {
        for (double& d : draws) {
            d = expo(gen);
        }
        std::partial_sort(draws.begin(), draws.begin() + m, draws.end(), std::greater<>());
        double w = 0.0;
        for (int j = 0; j < m; ++j) {
            w += draws[j];
        }
        sum += w;
        sum_sq += w * w;
    }
    double const mean = sum / samples;
    double const var = (sum_sq / samples - mean * mean) * samples / (samples - 1.0);
    return {mean, std::sqrt(var / samples)};
}

double sum_largest_exponentials_exact_mean(int n, int m) {
    // The k-th largest has mean sum_{r=k}^{n} 1/r.
    double total = 0.0;
    for (int k = 1; k <= m; ++k) {
        for (int r = k; r <= n; ++r) {
            total += 1.0 / r;
        }
    }
    return total;
}

}  // namespace ehrelay::oracles
