#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "coagg/lti/state_space.hpp"

namespace testutil {

using coagg::Complex;
using coagg::Poly;
using coagg::TransferFunction;

/// Largest coefficient difference between two transfer functions after
/// monic normalization, relative to the larger coefficient scale.
inline double tf_distance(const TransferFunction& a, const TransferFunction& b) {
    TransferFunction am = a.monic(), bm = b.monic();
    auto diff = [](const Poly& x, const Poly& y) {
        std::size_t n = std::max(x.size(), y.size());
        double d = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double xi = i + x.size() >= n ? x[i + x.size() - n] : 0.0;
            double yi = i + y.size() >= n ? y[i + y.size() - n] : 0.0;
            d = std::max(d, std::abs(xi - yi));
            scale = std::max({scale, std::abs(xi), std::abs(yi)});
        }
        return scale > 0.0 ? d / scale : d;
    };
    return std::max(diff(am.num, bm.num), diff(am.den, bm.den));
}

/// Random stable transfer function with real or conjugate pole pairs in
/// the left half plane and well-separated magnitudes.
inline TransferFunction random_stable_tf(std::mt19937& rng, int order,
                                         bool strictly_proper = true) {
    std::uniform_real_distribution<double> real_pole(-5.0, -0.2);
    std::uniform_real_distribution<double> imag_part(0.3, 3.0);
    std::uniform_real_distribution<double> gain(0.5, 2.0);
    std::bernoulli_distribution use_pair(0.4);

    std::vector<Complex> ps;
    while (static_cast<int>(ps.size()) < order) {
        if (order - static_cast<int>(ps.size()) >= 2 && use_pair(rng)) {
            Complex p(real_pole(rng), imag_part(rng));
            ps.push_back(p);
            ps.push_back(std::conj(p));
        } else {
            ps.emplace_back(real_pole(rng), 0.0);
        }
    }
    int nzeros = std::uniform_int_distribution<int>(0, strictly_proper ? order - 1 : order)(rng);
    auto clear_of_poles = [&](Complex z) {
        for (const Complex& p : ps)
            if (std::abs(z - p) < 0.05 * (1.0 + std::abs(p))) return false;
        return true;
    };
    std::vector<Complex> zs;
    while (static_cast<int>(zs.size()) < nzeros) {
        if (nzeros - static_cast<int>(zs.size()) >= 2 && use_pair(rng)) {
            Complex z(real_pole(rng), imag_part(rng));
            if (!clear_of_poles(z)) continue;  // keep the realization minimal
            zs.push_back(z);
            zs.push_back(std::conj(z));
        } else {
            Complex z(real_pole(rng), 0.0);
            if (!clear_of_poles(z)) continue;
            zs.push_back(z);
        }
    }
    Poly num = coagg::poly_scale(coagg::poly_from_roots(zs), gain(rng));
    Poly den = coagg::poly_from_roots(ps);
    return TransferFunction::make(num, den);
}

/// Random Hurwitz matrix: a dense draw shifted left of its spectral abscissa.
inline Eigen::MatrixXd random_hurwitz(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = entry(rng);
    Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
    double shift = es.eigenvalues().real().maxCoeff();
    return M - (shift + 0.5) * Eigen::MatrixXd::Identity(n, n);
}

inline std::string scenario_path(const std::string& name) {
    return std::string(COAGG_SCENARIO_DIR) + "/" + name;
}

}  // namespace testutil
