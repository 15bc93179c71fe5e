#pragma once

#include <cstdint>

// Reference computations used only to check the library: brute-force
// quadrature and sampling routes that share no code path with the closed
// forms or special-function recurrences they verify.

namespace ehrelay::oracles {

/// K_n(x) from \int_0^inf exp(-x cosh t) cosh(n t) dt, integrated adaptively
/// to a relative tolerance of 1e-14.
[[nodiscard]] double bessel_k_integral(int n, double x);

/// \int_0^upper exp(-(2i+1) y - eps1/y) dy by composite Simpson on a fixed grid.
[[nodiscard]] double beta_simpson(double upper, int i, double eps1, int panels = 1'000'000);

struct SampleMoment {
    double mean;
    double std_error;
};

/// Sample mean of the sum of the m largest of n unit exponentials, drawn with
/// std::mt19937_64 (independent of RandomStream).
[[nodiscard]] SampleMoment sum_largest_exponentials_mean(int n, int m, int samples, std::uint64_t seed);

/// E[sum of m largest of n unit exponentials] from the Renyi representation.
[[nodiscard]] double sum_largest_exponentials_exact_mean(int n, int m);

}  // namespace ehrelay::oracles
