#pragma once

namespace ehrelay {

/// Modified Bessel function of the second kind, K_n(x).
///
/// Domain: 0 <= n <= 16 and 1e-8 <= x <= 700; outside it a DomainError is
/// thrown. K_0 and K_1 come from their power series for x <= 2, Steed's
/// continued fraction for 2 < x < 25 and the Hankel asymptotic expansion
/// beyond; higher orders use the upward recurrence
/// K_{n+1} = K_{n-1} + (2n/x) K_n, which is stable for K.
[[nodiscard]] double bessel_k(int n, double x);

/// e^x K_n(x) for 0 <= n <= 16 and x >= 1e-8, with no upper limit on x.
[[nodiscard]] double bessel_k_scaled(int n, double x);

/// \int_0^inf w^{n-1} exp(-rate*w - c/w) dw = 2 (c/rate)^{n/2} K_n(2 sqrt(c*rate)).
///
/// n >= 1, rate > 0, c >= 0. At c = 0 the closed form is 0 * inf; the limit
/// (n-1)!/rate^n is returned instead, and the same limit is used whenever
/// the Bessel argument falls below 1e-8 (relative error there is < 1e-14).
[[nodiscard]] double bessel_moment(int n, double rate, double c);

}  // namespace ehrelay
