#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "coagg/errors.hpp"

namespace coagg {

namespace detail {

/// Sylvester solve T1 Y + Y T2' = R for blocks of size <= 2 via the
/// Kronecker form (I (x) T1 + T2 (x) I) vec(Y) = vec(R).
inline Eigen::MatrixXd small_sylvester(const Eigen::MatrixXd& T1, const Eigen::MatrixXd& T2,
                                       const Eigen::MatrixXd& R) {
    int p = static_cast<int>(T1.rows()), q = static_cast<int>(T2.rows());
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(p * q, p * q);
    for (int j = 0; j < q; ++j) K.block(j * p, j * p, p, p) += T1;
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) K.block(i * p, j * p, p, p) += T2(i, j) * Eigen::MatrixXd::Identity(p, p);
    Eigen::VectorXd rhs(p * q);
    for (int j = 0; j < q; ++j) rhs.segment(j * p, p) = R.col(j);
    Eigen::VectorXd y = K.fullPivLu().solve(rhs);
    Eigen::MatrixXd Y(p, q);
    for (int j = 0; j < q; ++j) Y.col(j) = y.segment(j * p, p);
    return Y;
}

inline Eigen::MatrixXd lyapunov_kron(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
    int n = static_cast<int>(A.rows());
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n * n, n * n);
    for (int j = 0; j < n; ++j) K.block(j * n, j * n, n, n) += A;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) K.block(i * n, j * n, n, n) += A(i, j) * Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd rhs(n * n);
    for (int j = 0; j < n; ++j) rhs.segment(j * n, n) = -Q.col(j);
    Eigen::VectorXd x = K.fullPivLu().solve(rhs);
    Eigen::MatrixXd X(n, n);
    for (int j = 0; j < n; ++j) X.col(j) = x.segment(j * n, n);
    return X;
}

}  // namespace detail

/// Solves A X + X A' + Q = 0 for Hurwitz A (Bartels-Stewart on the real
/// Schur form, block back-substitution). Falls back to a dense Kronecker
/// solve for n <= 20 if the Schur iteration does not converge.
inline Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Q) {
    if (A.rows() != A.cols() || Q.rows() != Q.cols() || A.rows() != Q.rows())
        throw ValidationError("lyapunov arguments must be square and conformant");
    int n = static_cast<int>(A.rows());
    if (n == 0) return Eigen::MatrixXd(0, 0);

    Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
    if (es.info() != Eigen::Success) throw NumericalError("eigensolve failed");
    for (int i = 0; i < n; ++i)
        if (es.eigenvalues()(i).real() >= -1e-12)
            throw NotHurwitz("lyapunov solve requires a Hurwitz matrix");

    Eigen::MatrixXd Qs = 0.5 * (Q + Q.transpose());

    Eigen::RealSchur<Eigen::MatrixXd> schur(A);
    if (schur.info() != Eigen::Success) {
        if (n <= 20) {
            Eigen::MatrixXd X = detail::lyapunov_kron(A, Qs);
            return 0.5 * (X + X.transpose());
        }
        throw NumericalError("real Schur decomposition failed");
    }
    const Eigen::MatrixXd& T = schur.matrixT();
    const Eigen::MatrixXd& U = schur.matrixU();
    Eigen::MatrixXd Qt = U.transpose() * Qs * U;

    // quasi-triangular block partition
    std::vector<int> starts;
    for (int i = 0; i < n;) {
        starts.push_back(i);
        i += (i + 1 < n && T(i + 1, i) != 0.0) ? 2 : 1;
    }
    auto blockSize = [&](std::size_t b) {
        int s = starts[b];
        return (b + 1 < starts.size() ? starts[b + 1] : n) - s;
    };

    // T Y + Y T' = -Qt, blocks solved bottom-up right-to-left
    Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(n, n);
    int m = static_cast<int>(starts.size());
    for (int bi = m - 1; bi >= 0; --bi) {
        int i0 = starts[static_cast<std::size_t>(bi)], p = blockSize(static_cast<std::size_t>(bi));
        for (int bj = m - 1; bj >= 0; --bj) {
            int j0 = starts[static_cast<std::size_t>(bj)], q = blockSize(static_cast<std::size_t>(bj));
            Eigen::MatrixXd R = -Qt.block(i0, j0, p, q);
            if (i0 + p < n)
                R -= T.block(i0, i0 + p, p, n - i0 - p) * Y.block(i0 + p, j0, n - i0 - p, q);
            if (j0 + q < n)
                R -= Y.block(i0, j0 + q, p, n - j0 - q) * T.block(j0, j0 + q, q, n - j0 - q).transpose();
            Y.block(i0, j0, p, q) =
                detail::small_sylvester(T.block(i0, i0, p, p), T.block(j0, j0, q, q), R);
        }
    }
    Eigen::MatrixXd X = U * Y * U.transpose();
    return 0.5 * (X + X.transpose());
}

}  // namespace coagg
