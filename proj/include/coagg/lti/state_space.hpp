#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "coagg/lti/transfer_function.hpp"

namespace coagg {

/// SISO state-space model dx = Ax + Bu, y = Cx + Du.
struct StateSpace {
    Eigen::MatrixXd A;
    Eigen::VectorXd B;
    Eigen::RowVectorXd C;
    double D = 0.0;

    int n() const { return static_cast<int>(A.rows()); }

    static StateSpace make(Eigen::MatrixXd A, Eigen::VectorXd B, Eigen::RowVectorXd C,
                           double D) {
        if (A.rows() != A.cols() || B.size() != A.rows() || C.size() != A.rows())
            throw ValidationError("state-space dimensions are inconsistent");
        return StateSpace{std::move(A), std::move(B), std::move(C), D};
    }
};

struct PoleReport {
    std::vector<Complex> values;
    bool stable = false;  // all strictly in the open left half plane
};

inline PoleReport poles(const StateSpace& sys) {
    PoleReport rep;
    rep.stable = true;
    if (sys.n() == 0) return rep;
    Eigen::EigenSolver<Eigen::MatrixXd> es(sys.A, false);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolve failed");
    for (int i = 0; i < sys.n(); ++i) {
        Complex p = es.eigenvalues()(i);
        rep.values.push_back(p);
        if (p.real() >= 0.0) rep.stable = false;
    }
    std::sort(rep.values.begin(), rep.values.end(), [](Complex x, Complex y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return rep;
}

inline PoleReport poles(const TransferFunction& g) {
    PoleReport rep;
    rep.values = poly_roots(g.den);
    rep.stable = true;
    for (Complex p : rep.values)
        if (p.real() >= 0.0) rep.stable = false;
    return rep;
}

/// Controllable canonical form of a proper transfer function.
inline StateSpace controllable_canonical(const TransferFunction& g) {
    TransferFunction gm = g.monic();
    int n = gm.order();
    double direct = 0.0;
    Poly num_sp = gm.num;
    if (gm.num_degree() == n && n >= 0) {
        direct = gm.num[0];
        num_sp = poly_sub(gm.num, poly_scale(gm.den, direct));
    }
    if (n == 0) return StateSpace{Eigen::MatrixXd(0, 0), Eigen::VectorXd(0),
                                  Eigen::RowVectorXd(0), direct + poly_eval(num_sp, 0.0)};
    StateSpace sys;
    sys.A = Eigen::MatrixXd::Zero(n, n);
    sys.B = Eigen::VectorXd::Zero(n);
    sys.C = Eigen::RowVectorXd::Zero(n);
    sys.D = direct;
    for (int i = 0; i + 1 < n; ++i) sys.A(i, i + 1) = 1.0;
    for (int i = 0; i < n; ++i) sys.A(n - 1, i) = -gm.den[static_cast<std::size_t>(n - i)];
    sys.B(n - 1) = 1.0;
    // pad the strictly proper numerator to n coefficients
    Poly padded(static_cast<std::size_t>(n), 0.0);
    std::size_t off = padded.size() - num_sp.size();
    for (std::size_t i = 0; i < num_sp.size(); ++i) padded[off + i] = num_sp[i];
    for (int i = 0; i < n; ++i) sys.C(i) = padded[static_cast<std::size_t>(n - 1 - i)];
    return sys;
}

/// Minimal realization. A SISO fraction is minimal exactly when numerator
/// and denominator are coprime, so shared roots (within tol, relative) are
/// cancelled and the reduced fraction is realized in controllable canonical
/// form. Rank tests on controllability or observability matrices are
/// avoided on purpose: their conditioning degrades with the pole spread
/// even for perfectly minimal models.
inline StateSpace minimal_state_space(const TransferFunction& g, double tol = 1e-8) {
    if (g.is_zero())
        return StateSpace{Eigen::MatrixXd(0, 0), Eigen::VectorXd(0), Eigen::RowVectorXd(0), 0.0};
    auto [num, den] = cancel_common_roots(g.num, g.den, tol);
    return controllable_canonical(TransferFunction::make(num, den));
}

namespace detail {

/// Characteristic polynomial assembled from eigenvalues (monic).
inline Poly charpoly(const Eigen::MatrixXd& M) {
    if (M.rows() == 0) return {1.0};
    Eigen::EigenSolver<Eigen::MatrixXd> es(M, false);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolve failed");
    std::vector<Complex> eigs(static_cast<std::size_t>(M.rows()));
    for (int i = 0; i < M.rows(); ++i) eigs[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return poly_from_roots(std::move(eigs));
}

}  // namespace detail

/// Transfer function of a state-space model. Uses the determinant identity
/// C adj(sI-A) B = det(sI-A+BC) - det(sI-A), then cancels shared roots.
inline TransferFunction transfer_of(const StateSpace& sys, double tol = 1e-8) {
    if (sys.n() == 0) return TransferFunction::make({sys.D}, {1.0});
    Poly den = detail::charpoly(sys.A);
    Poly shifted = detail::charpoly(sys.A - sys.B * sys.C);
    Poly num_sp = poly_sub(shifted, den);
    Poly num = poly_add(num_sp, poly_scale(den, sys.D));
    auto [nc, dc] = cancel_common_roots(num, den, tol);
    return TransferFunction::make(nc, dc);
}

/// Pointwise evaluation C (sI-A)^{-1} B + D.
inline Complex evaluate(const StateSpace& sys, Complex s) {
    if (sys.n() == 0) return sys.D;
    Eigen::MatrixXcd M = s * Eigen::MatrixXcd::Identity(sys.n(), sys.n()) -
                         sys.A.cast<Complex>();
    Eigen::VectorXcd x = M.partialPivLu().solve(sys.B.cast<Complex>());
    return (sys.C.cast<Complex>() * x)(0) + sys.D;
}

}  // namespace coagg
