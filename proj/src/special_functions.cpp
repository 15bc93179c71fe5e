#include "ehrelay/special_functions.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ehrelay/errors.hpp"
#include "ehrelay/numerics.hpp"

namespace ehrelay {
namespace {

constexpr int kMaxOrder = 16;
constexpr double kMinArg = 1e-8;
constexpr double kMaxArg = 700.0;
constexpr double kSeriesLimit = 2.0;
constexpr double kAsymptoticLimit = 25.0;

// K_0, K_1 from the ascending series (Abramowitz & Stegun 9.6.13, 9.6.11).
std::pair<double, double> k01_series(double x) {
    double const t = 0.25 * x * x;
    double const log_half = std::log(0.5 * x);
    double i0 = 0.0;
    double k0_tail = 0.0;
    double i1_sum = 0.0;
    double k1_tail = 0.0;
    double term0 = 1.0;  // t^k / (k!)^2
    double term1 = 1.0;  // t^k / (k! (k+1)!)
    double harmonic = 0.0;
    for (int k = 0; k < 60; ++k) {
        if (k > 0) {
            term0 *= t / (static_cast<double>(k) * k);
            term1 *= t / (static_cast<double>(k) * (k + 1));
            harmonic += 1.0 / k;
        }
        double const harmonic_next = harmonic + 1.0 / (k + 1);
        i0 += term0;
        k0_tail += term0 * harmonic;
        i1_sum += term1;
        k1_tail += term1 * (harmonic + harmonic_next - 2.0 * std::numbers::egamma);
        if (term0 < 1e-18 * i0 && term1 < 1e-18 * i1_sum) {
            break;
        }
    }
    double const k0 = -(log_half + std::numbers::egamma) * i0 + k0_tail;
    double const i1 = 0.5 * x * i1_sum;
    double const k1 = 1.0 / x + log_half * i1 - 0.25 * x * k1_tail;
    return {k0, k1};
}

// e^x K_0, e^x K_1 from Steed's continued fraction (Temme's CF2).
std::pair<double, double> k01_scaled_cf(double x) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    double const a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 1; i < 10000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        double const qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        double const dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < 1e-17) {
            break;
        }
    }
    h *= a1;
    double const k0 = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    double const k1 = k0 * (x + 0.5 - h) / x;
    return {k0, k1};
}

// e^x K_nu(x) from the Hankel expansion; valid for large x.
double k_scaled_asymptotic(int nu, double x) {
    double const mu = 4.0 * nu * nu;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        double const odd = 2.0 * k - 1.0;
        double const next = term * (mu - odd * odd) / (k * 8.0 * x);
        if (std::abs(next) >= std::abs(term)) {
            break;
        }
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) {
            break;
        }
    }
    return std::sqrt(std::numbers::pi / (2.0 * x)) * sum;
}

std::pair<double, double> k01_scaled(double x) {
    if (x <= kSeriesLimit) {
        auto [k0, k1] = k01_series(x);
        double const e = std::exp(x);
        return {k0 * e, k1 * e};
    }
    if (x < kAsymptoticLimit) {
        return k01_scaled_cf(x);
    }
    return {k_scaled_asymptotic(0, x), k_scaled_asymptotic(1, x)};
}

}  // namespace

double bessel_k_scaled(int n, double x) {
    if (n < 0 || n > kMaxOrder) {
        throw DomainError("bessel_k: order must lie in [0, 16], got " + std::to_string(n));
    }
    if (!(x >= kMinArg) || std::isinf(x)) {
        throw DomainError("bessel_k: argument must be >= 1e-8 and finite, got " + std::to_string(x));
    }
    auto [km, k] = k01_scaled(x);
    if (n == 0) {
        return km;
    }
    for (int j = 1; j < n; ++j) {
        double const kp = km + (2.0 * j / x) * k;
        km = k;
        k = kp;
    }
    return k;
}

double bessel_k(int n, double x) {
    if (!(x <= kMaxArg)) {
        throw DomainError("bessel_k: argument must be <= 700, got " + std::to_string(x));
    }
    return bessel_k_scaled(n, x) * std::exp(-x);
}

double bessel_moment(int n, double rate, double c) {
    if (n < 1 || n > kMaxOrder || !(rate > 0.0) || !(c >= 0.0)) {
        throw DomainError("bessel_moment: need 1 <= n <= 16, rate > 0, c >= 0");
    }
    double const arg = 2.0 * std::sqrt(c * rate);
    if (arg < kMinArg) {
        return factorial(n - 1) / std::pow(rate, n);
    }
    // 2 (c/rate)^{n/2} e^{-arg} [e^{arg} K_n(arg)], combined in log space.
    double const log_value = std::log(2.0) + 0.5 * n * std::log(c / rate) - arg + std::log(bessel_k_scaled(n, arg));
    return std::exp(log_value);
}

}  // namespace ehrelay
