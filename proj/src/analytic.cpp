#include "ehrelay/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ehrelay/errors.hpp"
#include "ehrelay/numerics.hpp"
#include "ehrelay/quadrature.hpp"
#include "ehrelay/special_functions.hpp"

namespace ehrelay {
namespace {

double sign(int k) { return (k % 2 == 0) ? 1.0 : -1.0; }

void require_single_pair(AnalyticParams const& params, char const* what) {
    if (params.num_scheduled != 1) {
        throw DomainError(std::string(what) + " is defined for m = 1 only");
    }
}

void require_cap(AnalyticParams const& params, char const* what) {
    if (params.num_pairs < 1) {
        throw DomainError(std::string(what) + ": M must be positive");
    }
    if (params.num_pairs > params.max_pairs_exact) {
        throw DomainError(std::string(what) + ": M=" + std::to_string(params.num_pairs) +
                          " exceeds the cancellation guard " + std::to_string(params.max_pairs_exact));
    }
}

// The alternating sums carry absolute rounding noise near 1e-12, which can
// push a vanishing probability slightly negative.
double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

// 1 - e^{-x}
double one_minus_exp(double x) { return -std::expm1(-x); }

}  // namespace

AnalyticParams AnalyticParams::from_config(SystemConfig const& cfg) {
    AnalyticParams p;
    p.num_pairs = cfg.num_pairs;
    p.num_scheduled = cfg.num_scheduled;
    p.thr = compute_thresholds(cfg);
    return p;
}

double beta_integral(double upper, int i, double eps1) {
    if (!(upper > 0.0)) {
        throw DomainError("beta_integral: upper limit must be positive");
    }
    double const rate = 2.0 * i + 1.0;
    auto integrand = [rate, eps1](double y) { return y <= 0.0 ? 0.0 : std::exp(-rate * y - eps1 / y); };
    return integrate(integrand, 0.0, upper, {.abs_tol = 1e-12}).value;
}

DensityAndCdf minpair_max_pdf_cdf(double z, int num_pairs) {
    if (!(z >= 0.0)) {
        throw DomainError("minpair_max_pdf_cdf: z must be non-negative");
    }
    double const base = one_minus_exp(2.0 * z);
    double const density = 2.0 * num_pairs * std::exp(-2.0 * z) * std::pow(base, num_pairs - 1);
    return {density, std::pow(base, num_pairs)};
}

double prob_decode_set_size(int n, AnalyticParams const& params) {
    int const M = params.num_pairs;
    if (n < 0 || n > M) {
        throw DomainError("prob_decode_set_size: n must lie in [0, M]");
    }
    double const eps = params.thr.eps;
    return binomial(M, n) * std::pow(one_minus_exp(eps), M - n) * std::exp(-n * eps);
}

double theorem1_maxmin_outage(AnalyticParams const& params) {
    require_single_pair(params, "theorem1_maxmin_outage");
    require_cap(params, "theorem1_maxmin_outage");
    int const M = params.num_pairs;
    double const eps = params.thr.eps;
    double const eps0 = params.thr.eps0;
    double const eps1 = params.thr.eps1;
    double const e_eps = std::exp(-eps);

    // (e^{-eps}/2) sum_i C(M,i) (-1)^i/(2i-1) (1 - e^{-(2i-1) eps})
    CompensatedSum first;
    for (int i = 0; i <= M; ++i) {
        double const k = 2.0 * i - 1.0;
        first += binomial(M, i) * sign(i) / k * one_minus_exp(k * eps);
    }

    CompensatedSum second;
    CompensatedSum fourth;
    for (int i = 0; i < M; ++i) {
        double const c = binomial(M - 1, i) * sign(i);
        double const a = 2.0 * i + 1.0;
        double const b = 2.0 * i + 2.0;
        // (e^{-eps} - e^{-(2i+2)eps})/(2i+1)
        double const t1 = e_eps * one_minus_exp(a * eps) / a;
        // (e^{-(2i+2)eps} - e^{-(2i+2)eps0})/(2i+2)
        double const t2 = std::exp(-b * eps) * one_minus_exp(b * (eps0 - eps)) / b;
        second += c * t1;
        second += c * t2;
        second -= c * e_eps * beta_integral(eps0, i, eps1);
        fourth += c * t2;
        if (eps0 > eps) {
            fourth -= c * std::exp(-a * eps) * beta_integral(eps0 - eps, i, eps1);
        }
    }

    CompensatedSum total;
    total += 0.5 * e_eps * first.value();
    total += M * second.value();
    total += 0.5 * std::pow(one_minus_exp(2.0 * eps), M);
    total += M * fourth.value();
    return clamp_probability(total.value());
}

double conventional_maxmin_outage(AnalyticParams const& params) {
    require_single_pair(params, "conventional_maxmin_outage");
    return std::pow(one_minus_exp(2.0 * params.thr.eps), params.num_pairs);
}

double relay_hop_failure(double eps1) {
    // 1 - \int_0^inf e^{-y} e^{-eps1/y} dy
    return 1.0 - bessel_moment(1, 1.0, eps1);
}

double approach1_outage_exact(AnalyticParams const& params) {
    require_single_pair(params, "approach1_outage_exact");
    require_cap(params, "approach1_outage_exact");
    int const M = params.num_pairs;
    double const hop = relay_hop_failure(params.thr.eps1);
    CompensatedSum total;
    total += prob_decode_set_size(0, params);
    for (int n = 1; n <= M; ++n) {
        total += std::pow(hop, n) * prob_decode_set_size(n, params);
    }
    return clamp_probability(total.value());
}

double approach1_outage_asymptotic(AnalyticParams const& params) {
    require_single_pair(params, "approach1_outage_asymptotic");
    double const eps = params.thr.eps;
    if (!(eps > 0.0 && eps < std::exp(-1.0))) {
        throw DomainError("approach1_outage_asymptotic: requires 0 < eps < 1/e");
    }
    int const M = params.num_pairs;
    double const log_inv = std::log(1.0 / eps);
    double total = std::pow(eps, M);
    for (int n = 1; n <= M; ++n) {
        total += std::pow(eps, n) * std::pow(log_inv, n) * binomial(M, n) * std::pow(eps, M - n);
    }
    return total;
}

namespace {

// Coefficients of the density of the sum of the m largest of n exponentials.
struct LargestSumCoefficients {
    int n;
    int m;

    [[nodiscard]] double d(int k) const {
        return factorial(n) / (factorial(n - m - 1) * factorial(m) * m) * binomial(n - m - 1, k) * sign(k);
    }
    [[nodiscard]] double a(int j, int k) const {
        int const p = m - j + 1;
        return sign(m - j) * std::pow(m, p) / std::pow(k + 1.0, p);
    }
    [[nodiscard]] double b(int k) const { return sign(m) * std::pow(m, m) / std::pow(k + 1.0, m); }
    [[nodiscard]] double rate(int k) const { return 1.0 + (k + 1.0) / m; }
};

void require_largest_sum_args(int n, int m) {
    if (m < 1 || m >= n) {
        throw DomainError("sum of m largest of n exponentials needs 1 <= m < n");
    }
}

}  // namespace

double sum_largest_exponentials_pdf(double w, int n, int m) {
    require_largest_sum_args(n, m);
    if (w < 0.0) {
        return 0.0;
    }
    LargestSumCoefficients const coef{n, m};
    CompensatedSum total;
    for (int k = 0; k <= n - m - 1; ++k) {
        CompensatedSum inner;
        for (int j = 1; j <= m; ++j) {
            inner += coef.a(j, k) * std::exp(-w) * std::pow(w, j - 1) / factorial(j - 1);
        }
        inner += coef.b(k) * std::exp(-coef.rate(k) * w);
        total += coef.d(k) * inner.value();
    }
    return total.value();
}

double sum_largest_exponentials_laplace_inverse(int n, int m, double c) {
    require_largest_sum_args(n, m);
    LargestSumCoefficients const coef{n, m};
    CompensatedSum total;
    for (int k = 0; k <= n - m - 1; ++k) {
        CompensatedSum inner;
        for (int j = 1; j <= m; ++j) {
            inner += coef.a(j, k) * bessel_moment(j, 1.0, c) / factorial(j - 1);
        }
        inner += coef.b(k) * bessel_moment(1, coef.rate(k), c);
        total += coef.d(k) * inner.value();
    }
    return total.value();
}

namespace {

// P(rank-i destination fails | |S| = n) when all n <= m decodable sources
// are scheduled and split their pooled power n ways.
double greedy_t2(int rank, int n, AnalyticParams const& params) {
    if (rank > n) {
        return 1.0;
    }
    int const M = params.num_pairs;
    double const eps1 = params.thr.eps1;
    CompensatedSum sum;
    for (int k = 0; k <= M - rank; ++k) {
        double const c = (k + rank) * static_cast<double>(n) * eps1;
        double const tail = bessel_moment(n, 1.0, c) / factorial(n - 1);
        sum += binomial(M - rank, k) * sign(k) / (k + rank) * (1.0 - tail);
    }
    return rank * binomial(M, rank) * sum.value();
}

// Same quantity when n > m decodable sources compete for m slots.
double greedy_t3(int rank, int n, AnalyticParams const& params) {
    int const M = params.num_pairs;
    int const m = params.num_scheduled;
    double const eps1 = params.thr.eps1;
    double const lead = factorial(M) / (factorial(M - rank) * factorial(rank - 1));
    CompensatedSum sum;
    for (int l = 0; l <= M - rank; ++l) {
        double const c = m * eps1 * (l + rank);
        double const t4 = sum_largest_exponentials_laplace_inverse(n, m, c);
        sum += binomial(M - rank, l) * sign(l) / (l + rank) * (1.0 - t4);
    }
    return lead * sum.value();
}

}  // namespace

double greedy_outage_lemma2(int rank, AnalyticParams const& params) {
    require_cap(params, "greedy_outage_lemma2");
    int const M = params.num_pairs;
    int const m = params.num_scheduled;
    if (m < 1 || m > M || rank < 1 || rank > m) {
        throw DomainError("greedy_outage_lemma2: need 1 <= rank <= m <= M");
    }
    CompensatedSum total;
    total += prob_decode_set_size(0, params);
    for (int n = 1; n <= m; ++n) {
        total += greedy_t2(rank, n, params) * prob_decode_set_size(n, params);
    }
    for (int n = m + 1; n <= M; ++n) {
        total += greedy_t3(rank, n, params) * prob_decode_set_size(n, params);
    }
    return clamp_probability(total.value());
}

double greedy_single_pair_T3(int n, AnalyticParams const& params) {
    require_single_pair(params, "greedy_single_pair_T3");
    int const M = params.num_pairs;
    if (n < 1 || n > M) {
        throw DomainError("greedy_single_pair_T3: n must lie in [1, M]");
    }
    double const eps1 = params.thr.eps1;
    CompensatedSum outer;
    for (int k = 0; k <= M; ++k) {
        CompensatedSum inner;
        for (int i = 0; i <= n - 1; ++i) {
            // At k = 0 this is the 1/(i+1) limit of the Bessel product.
            inner += binomial(n - 1, i) * sign(i) * bessel_moment(1, i + 1.0, k * eps1);
        }
        outer += binomial(M, k) * sign(k) * inner.value();
    }
    return clamp_probability(n * outer.value());
}

double greedy_single_pair_outage(AnalyticParams const& params) {
    require_cap(params, "greedy_single_pair_outage");
    CompensatedSum total;
    total += prob_decode_set_size(0, params);
    for (int n = 1; n <= params.num_pairs; ++n) {
        total += greedy_single_pair_T3(n, params) * prob_decode_set_size(n, params);
    }
    return clamp_probability(total.value());
}

double fit_diversity_slope(std::span<std::pair<double, double> const> points) {
    double sx = 0.0;
    double sy = 0.0;
    double sxx = 0.0;
    double sxy = 0.0;
    int used = 0;
    double prev_power = 0.0;
    for (auto const& [power, outage] : points) {
        if (!(power > prev_power) || !std::isfinite(power)) {
            throw DomainError("fit_diversity_slope: transmit powers must be positive and strictly increasing");
        }
        prev_power = power;
        if (!(outage > 0.0 && outage < 1.0)) {
            continue;
        }
        double const x = std::log10(power);
        double const y = std::log10(outage);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++used;
    }
    if (used < 4) {
        throw FitError("fit_diversity_slope: need at least 4 points with outage in (0, 1), got " +
                       std::to_string(used));
    }
    double const denom = used * sxx - sx * sx;
    if (!(denom > 0.0)) {
        throw FitError("fit_diversity_slope: degenerate abscissae");
    }
    return -(used * sxy - sx * sy) / denom;
}

}  // namespace ehrelay
