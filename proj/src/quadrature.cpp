#include "ehrelay/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ehrelay/errors.hpp"
#include "ehrelay/numerics.hpp"

namespace ehrelay {
namespace {

// Kronrod abscissae on [0, 1] (odd entries are the Gauss nodes), weights for
// the 15-point Kronrod rule and the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(Panel const& other) const { return error < other.error; }
};

Panel gauss_kronrod(std::function<double(double)> const& f, double a, double b) {
    double const center = 0.5 * (a + b);
    double const half = 0.5 * (b - a);
    double const fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        double const dx = half * kXgk[j];
        double const sum = f(center - dx) + f(center + dx);
        kronrod += kWgk[j] * sum;
        if (j % 2 == 1) {
            gauss += kWg[j / 2] * sum;
        }
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

QuadratureResult integrate(std::function<double(double)> const& f, double a, double b,
                           QuadratureOptions const& opts) {
    if (a == b) {
        return {};
    }
    std::vector<Panel> heap;
    heap.push_back(gauss_kronrod(f, a, b));
    CompensatedSum total;
    CompensatedSum error;
    total += heap.front().value;
    error += heap.front().error;
    int count = 1;
    auto done = [&] {
        return error.value() <= std::max(opts.abs_tol, opts.rel_tol * std::abs(total.value()));
    };

    while (!done()) {
        if (count >= opts.max_panels) {
            throw QuadratureError("adaptive quadrature did not converge within " + std::to_string(opts.max_panels) +
                                  " panels (error estimate " + std::to_string(error.value()) + ")");
        }
        std::pop_heap(heap.begin(), heap.end());
        Panel const worst = heap.back();
        heap.pop_back();
        double const mid = 0.5 * (worst.a + worst.b);
        Panel const left = gauss_kronrod(f, worst.a, mid);
        Panel const right = gauss_kronrod(f, mid, worst.b);
        total += left.value;
        total += right.value;
        total -= worst.value;
        error += left.error;
        error += right.error;
        error -= worst.error;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
        ++count;
    }

    // Final sum from the panels themselves rather than the running total.
    CompensatedSum value;
    CompensatedSum err;
    for (Panel const& p : heap) {
        value += p.value;
        err += p.error;
    }
    return {value.value(), err.value(), count};
}

QuadratureResult integrate_to_infinity(std::function<double(double)> const& f, double a,
                                       QuadratureOptions const& opts) {
    auto mapped = [&f, a](double t) {
        double const s = 1.0 - t;
        double const v = f(a + t / s);
        return v == 0.0 ? 0.0 : v / (s * s);
    };
    return integrate(mapped, 0.0, 1.0, opts);
}

}  // namespace ehrelay
