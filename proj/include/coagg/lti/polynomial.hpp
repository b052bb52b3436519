#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include "coagg/errors.hpp"

namespace coagg {

/// Real polynomial, coefficients in descending powers of s.
using Poly = std::vector<double>;

using Complex = std::complex<double>;

/// Drops leading zero coefficients; the zero polynomial collapses to {0}.
inline Poly poly_trim(const Poly& p) {
    std::size_t i = 0;
    while (i + 1 < p.size() && p[i] == 0.0) ++i;
    return Poly(p.begin() + static_cast<std::ptrdiff_t>(i), p.end());
}

inline int poly_degree(const Poly& p) {
    Poly t = poly_trim(p);
    if (t.size() == 1 && t[0] == 0.0) return -1;  // zero polynomial
    return static_cast<int>(t.size()) - 1;
}

inline Poly poly_scale(const Poly& p, double k) {
    Poly r = p;
    for (double& c : r) c *= k;
    return r;
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), 0.0);
    std::size_t oa = r.size() - a.size(), ob = r.size() - b.size();
    for (std::size_t i = 0; i < a.size(); ++i) r[oa + i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[ob + i] += b[i];
    return poly_trim(r);
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
    return poly_add(a, poly_scale(b, -1.0));
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (poly_degree(a) < 0 || poly_degree(b) < 0) return {0.0};
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return poly_trim(r);
}

inline Complex poly_eval(const Poly& p, Complex s) {
    Complex acc = 0.0;
    for (double c : p) acc = acc * s + c;
    return acc;
}

inline double poly_eval(const Poly& p, double s) {
    double acc = 0.0;
    for (double c : p) acc = acc * s + c;
    return acc;
}

inline Poly poly_derivative(const Poly& p) {
    Poly t = poly_trim(p);
    int deg = poly_degree(t);
    if (deg <= 0) return {0.0};
    Poly r(static_cast<std::size_t>(deg), 0.0);
    for (int i = 0; i < deg; ++i) r[static_cast<std::size_t>(i)] = t[static_cast<std::size_t>(i)] * (deg - i);
    return r;
}

inline Poly poly_monic(const Poly& p) {
    Poly t = poly_trim(p);
    if (t[0] == 0.0) throw ZeroDivisor("cannot normalize the zero polynomial");
    return poly_scale(t, 1.0 / t[0]);
}

/// Euclidean division a = q*b + r with deg(r) < deg(b).
inline std::pair<Poly, Poly> poly_divide(const Poly& a, const Poly& b) {
    Poly den = poly_trim(b);
    if (poly_degree(den) < 0) throw ZeroDivisor("polynomial division by zero");
    Poly rem = poly_trim(a);
    int dd = poly_degree(den);
    int dr = poly_degree(rem);
    if (dr < dd) return {{0.0}, rem};
    Poly quo(static_cast<std::size_t>(dr - dd) + 1, 0.0);
    for (std::size_t k = 0; k + den.size() <= rem.size(); ++k) {
        double f = rem[k] / den[0];
        quo[k] = f;
        for (std::size_t j = 0; j < den.size(); ++j) rem[k + j] -= f * den[j];
    }
    rem.erase(rem.begin(), rem.begin() + static_cast<std::ptrdiff_t>(quo.size()));
    if (rem.empty()) rem = {0.0};
    return {poly_trim(quo), poly_trim(rem)};
}

/// Roots via the companion matrix, sorted by real part then imaginary part.
inline std::vector<Complex> poly_roots(const Poly& p) {
    Poly t = poly_trim(p);
    int deg = poly_degree(t);
    if (deg <= 0) return {};
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 0; i < deg; ++i) comp(0, i) = -t[static_cast<std::size_t>(i) + 1] / t[0];
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw NumericalError("companion eigensolve failed");
    std::vector<Complex> roots(static_cast<std::size_t>(deg));
    for (int i = 0; i < deg; ++i) roots[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    std::sort(roots.begin(), roots.end(), [](Complex x, Complex y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return roots;
}

/// Real polynomial with the given roots; conjugate pairs are combined
/// exactly into quadratic factors. Leading coefficient is 1.
inline Poly poly_from_roots(std::vector<Complex> roots) {
    Poly out{1.0};
    std::vector<bool> used(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        Complex r = roots[i];
        if (std::abs(r.imag()) <= 1e-12 * (1.0 + std::abs(r))) {
            out = poly_mul(out, {1.0, -r.real()});
            continue;
        }
        // find the best conjugate partner
        std::size_t best = roots.size();
        double bestDist = std::numeric_limits<double>::infinity();
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j]) continue;
            double dist = std::abs(roots[j] - std::conj(r));
            if (dist < bestDist) {
                bestDist = dist;
                best = j;
            }
        }
        if (best == roots.size() || bestDist > 1e-8 * (1.0 + std::abs(r)))
            throw NumericalError("complex root without conjugate partner");
        used[best] = true;
        out = poly_mul(out, {1.0, -2.0 * r.real(), std::norm(r)});
    }
    return out;
}

/// Removes root pairs shared by num and den within tol*(1+|root|),
/// preserving the overall gain of num/den.
inline std::pair<Poly, Poly> cancel_common_roots(const Poly& num, const Poly& den,
                                                 double tol = 1e-8) {
    Poly n = poly_trim(num), d = poly_trim(den);
    if (poly_degree(n) < 0 || poly_degree(d) < 1) return {n, d};
    std::vector<Complex> zn = poly_roots(n), zd = poly_roots(d);
    std::vector<bool> keep(zd.size(), true);
    std::vector<Complex> zn_keep;
    for (Complex z : zn) {
        std::size_t best = zd.size();
        double bestDist = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < zd.size(); ++j) {
            if (!keep[j]) continue;
            double dist = std::abs(z - zd[j]);
            if (dist < bestDist) {
                bestDist = dist;
                best = j;
            }
        }
        if (best < zd.size() && bestDist <= tol * (1.0 + std::abs(zd[best])))
            keep[best] = false;
        else
            zn_keep.push_back(z);
    }
    std::vector<Complex> zd_keep;
    for (std::size_t j = 0; j < zd.size(); ++j)
        if (keep[j]) zd_keep.push_back(zd[j]);
    if (zn_keep.size() == zn.size()) return {n, d};
    Poly n2 = poly_scale(poly_from_roots(zn_keep), n[0]);
    Poly d2 = poly_scale(poly_from_roots(zd_keep), d[0]);
    return {n2, d2};
}

}  // namespace coagg
