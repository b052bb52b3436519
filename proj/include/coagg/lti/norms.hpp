#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "coagg/lti/response.hpp"

namespace coagg {

namespace detail {

/// Supremum of a magnitude function over eta >= 0: fixed log grid plus
/// golden-section refinement around the best interior grid maxima.
inline double sup_magnitude(const std::function<double(double)>& mag, double at_zero,
                            double at_inf, double rel_tol) {
    const int kGridSize = 2000;
    std::vector<double> etas = logspace(1e-4, 1e4, kGridSize);
    std::vector<double> vals(etas.size());
    for (std::size_t i = 0; i < etas.size(); ++i) vals[i] = mag(etas[i]);

    double best = std::max(at_zero, at_inf);
    for (double v : vals) best = std::max(best, v);

    // interior local maxima, largest three
    std::vector<std::size_t> peaks;
    for (std::size_t i = 1; i + 1 < vals.size(); ++i)
        if (vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1]) peaks.push_back(i);
    std::sort(peaks.begin(), peaks.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] > vals[b]; });
    if (peaks.size() > 3) peaks.resize(3);

    const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
    const double width_tol = rel_tol / std::log(10.0);
    for (std::size_t p : peaks) {
        double a = std::log10(etas[p - 1]), b = std::log10(etas[p + 1]);
        double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
        double f1 = mag(std::pow(10.0, x1)), f2 = mag(std::pow(10.0, x2));
        for (int it = 0; it < 200 && b - a > width_tol; ++it) {
            if (f1 < f2) {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + golden * (b - a);
                f2 = mag(std::pow(10.0, x2));
            } else {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - golden * (b - a);
                f1 = mag(std::pow(10.0, x1));
            }
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

}  // namespace detail

/// H-infinity norm of a stable transfer function.
inline double hinf_norm(const TransferFunction& g, double rel_tol = 1e-6) {
    if (!poles(g).stable) throw UnstableSystem("hinf norm requires a stable model");
    if (g.order() == 0) return std::abs(g.num.back() / g.den.back());
    double at_zero = std::abs(dc_gain(g));
    double at_inf =
        g.num_degree() == g.order() ? std::abs(g.num[0] / g.den[0]) : 0.0;
    auto mag = [&](double eta) { return std::abs(g.at(Complex(0.0, eta))); };
    return detail::sup_magnitude(mag, at_zero, at_inf, rel_tol);
}

inline double hinf_norm(const StateSpace& sys, double rel_tol = 1e-6) {
    if (!poles(sys).stable) throw UnstableSystem("hinf norm requires a stable model");
    if (sys.n() == 0) return std::abs(sys.D);
    auto mag = [&](double eta) { return std::abs(evaluate(sys, Complex(0.0, eta))); };
    return detail::sup_magnitude(mag, std::abs(dc_gain(sys)), std::abs(sys.D), rel_tol);
}

}  // namespace coagg
