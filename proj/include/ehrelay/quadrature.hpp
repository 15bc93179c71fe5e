#pragma once

#include <functional>

namespace ehrelay {

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    int max_panels = 1 << 20;
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // Kronrod-minus-Gauss estimate summed over panels
    int panels = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration on [a, b].
/// The panel with the largest error estimate is bisected until the total
/// estimate is within max(abs_tol, rel_tol * |value|). Endpoints are never
/// evaluated. Throws QuadratureError when max_panels is reached first.
[[nodiscard]] QuadratureResult integrate(std::function<double(double)> const& f, double a, double b,
                                         QuadratureOptions const& opts = {});

/// Integral over [a, inf) through the substitution x = a + t / (1 - t).
[[nodiscard]] QuadratureResult integrate_to_infinity(std::function<double(double)> const& f, double a,
                                                     QuadratureOptions const& opts = {});

}  // namespace ehrelay
