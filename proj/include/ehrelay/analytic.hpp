#pragma once

#include <span>
#include <utility>

#include "ehrelay/core_model.hpp"

namespace ehrelay {

/// Inputs shared by the closed-form outage expressions.
struct AnalyticParams {
    int num_pairs = 1;      // M
    int num_scheduled = 1;  // m
    Thresholds thr;
    /// Alternating binomial sums lose about half the significand to
    /// cancellation beyond this M, so larger M is refused.
    int max_pairs_exact = 20;

    [[nodiscard]] static AnalyticParams from_config(SystemConfig const& cfg);
};

/// \int_0^upper exp(-(2i+1) y - eps1 / y) dy by adaptive quadrature
/// (absolute tolerance 1e-12). The integrand is taken as 0 at y = 0.
[[nodiscard]] double beta_integral(double upper, int i, double eps1);

struct DensityAndCdf {
    double density;
    double cumulative;
};

/// Density and CDF of max_i min{|h_i|^2, |g_i|^2} over M i.i.d. pairs.
[[nodiscard]] DensityAndCdf minpair_max_pdf_cdf(double z, int num_pairs);

/// P(|S| = n): binomial law of the decode-set size.
[[nodiscard]] double prob_decode_set_size(int n, AnalyticParams const& params);

/// Exact outage of single-pair max-min scheduling with an energy
/// harvesting relay (four-term closed form with two beta integrals).
[[nodiscard]] double theorem1_maxmin_outage(AnalyticParams const& params);

/// Max-min outage when the relay transmits at the source power:
/// (1 - e^{-2 eps})^M.
[[nodiscard]] double conventional_maxmin_outage(AnalyticParams const& params);

/// 1 - 2 sqrt(eps1) K_1(2 sqrt(eps1)): the chance that one decodable pair's
/// relay hop fails.
[[nodiscard]] double relay_hop_failure(double eps1);

/// Exact outage of decode-set-then-argmax scheduling (m = 1).
[[nodiscard]] double approach1_outage_exact(AnalyticParams const& params);

/// High-SNR form eps^M + sum_n C(M,n) eps^n ln(1/eps)^n eps^{M-n}; needs eps < 1/e.
[[nodiscard]] double approach1_outage_asymptotic(AnalyticParams const& params);

/// Density of the sum of the m largest of n i.i.d. unit exponentials (1 <= m < n).
[[nodiscard]] double sum_largest_exponentials_pdf(double w, int n, int m);

/// \int_0^inf f_w(w) exp(-c / w) dw for the density above, in Bessel form.
[[nodiscard]] double sum_largest_exponentials_laplace_inverse(int n, int m, double c);

/// Per-rank outage of greedy scheduling (rank 1 = strongest destination).
/// When fewer than `rank` sources are decodable that rank is not served
/// and counts as an outage.
[[nodiscard]] double greedy_outage_lemma2(int rank, AnalyticParams const& params);

/// P(outage | |S| = n) for single-pair greedy scheduling, in the double-sum
/// Bessel form. Requires m = 1 and 1 <= n <= M.
[[nodiscard]] double greedy_single_pair_T3(int n, AnalyticParams const& params);

/// P(|S| = 0) + sum_n greedy_single_pair_T3(n) P(|S| = n).
[[nodiscard]] double greedy_single_pair_outage(AnalyticParams const& params);

/// Diversity estimate: negated least-squares slope of log10(outage) against
/// log10(P). Points are (linear P, outage); P must be strictly increasing.
/// Only points with outage in (0, 1) are used, and at least four are needed.
[[nodiscard]] double fit_diversity_slope(std::span<std::pair<double, double> const> points);

}  // namespace ehrelay
