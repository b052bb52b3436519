#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "coagg/lti/lyapunov.hpp"
#include "coagg/lti/state_space.hpp"

namespace coagg {

/// Stable, biproper output weighting filter.
struct FrequencyWeight {
    TransferFunction tf{{1.0}, {1.0}};

    static FrequencyWeight make(TransferFunction w) {
        if (!poles(w).stable) throw ValidationError("weight must be stable");
        if (w.num_degree() < 0) throw ValidationError("weight must be nonzero");
        return FrequencyWeight{std::move(w)};
    }

    static FrequencyWeight unity() { return FrequencyWeight{}; }
};

/// Factors of the frequency-weighted balancing problem: unweighted
/// controllability and weighted observability gramian square roots, and the
/// SVD of their product whose singular values are the weighted Hankel values.
struct WeightedBalancing {
    StateSpace sys;
    Eigen::MatrixXd Xc_half;
    Eigen::MatrixXd Yo_half;
    Eigen::MatrixXd U, V;
    Eigen::VectorXd hankel;
};

namespace detail {

inline Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& M) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    if (es.info() != Eigen::Success) throw NumericalError("symmetric eigensolve failed");
    Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace detail

inline WeightedBalancing weighted_balancing(const StateSpace& sys, const FrequencyWeight& w) {
    int n = sys.n();
    if (n < 1) throw ValidationError("balancing needs at least one state");
    if (std::abs(sys.D) > 1e-12)
        throw NotStrictlyProper("balancing expects a strictly proper model");
    if (!poles(sys).stable) throw UnstableInput("balancing requires a stable model");

    StateSpace wss = minimal_state_space(w.tf);
    if (!poles(wss).stable) throw ValidationError("weight must be stable");
    int nw = wss.n();

    // output-weighted extended system [A 0; Bw C Aw], [B; 0], [Dw C, Cw]
    Eigen::MatrixXd Ae = Eigen::MatrixXd::Zero(n + nw, n + nw);
    Ae.topLeftCorner(n, n) = sys.A;
    if (nw > 0) {
        Ae.bottomLeftCorner(nw, n) = wss.B * sys.C;
        Ae.bottomRightCorner(nw, nw) = wss.A;
    }
    Eigen::VectorXd Be = Eigen::VectorXd::Zero(n + nw);
    Be.head(n) = sys.B;
    Eigen::RowVectorXd Ce(n + nw);
    Ce.head(n) = wss.D * sys.C;
    if (nw > 0) Ce.tail(nw) = wss.C;

    Eigen::MatrixXd Xc = solve_lyapunov(sys.A, sys.B * sys.B.transpose());
    Eigen::MatrixXd Ye =
        solve_lyapunov(Ae.transpose(), Ce.transpose() * Ce);
    Eigen::MatrixXd Yo = Ye.topLeftCorner(n, n);

    WeightedBalancing bal;
    bal.sys = sys;
    bal.Xc_half = detail::psd_sqrt(Xc);
    bal.Yo_half = detail::psd_sqrt(Yo);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(bal.Yo_half * bal.Xc_half,
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    bal.U = svd.matrixU();
    bal.V = svd.matrixV();
    bal.hankel = svd.singularValues();
    return bal;
}

/// Projects onto the k dominant balanced directions. The projection maps
/// T = S^{-1/2} U' Yo^{1/2}, Tinv = Xc^{1/2} V S^{-1/2} satisfy T Tinv = I
/// and take both gramians to diag(hankel).
inline StateSpace truncate_balanced(const WeightedBalancing& bal, int k) {
    int n = bal.sys.n();
    if (k < 1 || k > n) throw OrderTooHigh("requested order is out of range");
    double smax = bal.hankel(0);
    int usable = 0;
    for (int i = 0; i < n; ++i)
        if (bal.hankel(i) > 1e-10 * smax) ++usable;
    if (k > usable)
        throw OrderTooHigh("requested order exceeds the numerical rank of the balancing");

    Eigen::VectorXd scale = bal.hankel.head(k).cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd T = scale.asDiagonal() * bal.U.leftCols(k).transpose() * bal.Yo_half;
    Eigen::MatrixXd Tinv = bal.Xc_half * bal.V.leftCols(k) * scale.asDiagonal();
    return StateSpace{T * bal.sys.A * Tinv, T * bal.sys.B, bal.sys.C * Tinv, 0.0};
}

/// Frequency-weighted balanced truncation to order k.
inline StateSpace fw_balanced_truncation(const StateSpace& sys, const FrequencyWeight& w,
                                         int k) {
    return truncate_balanced(weighted_balancing(sys, w), k);
}

inline Eigen::VectorXd weighted_hankel_values(const StateSpace& sys,
                                              const FrequencyWeight& w) {
    return weighted_balancing(sys, w).hankel;
}

inline Eigen::VectorXd hankel_singular_values(const StateSpace& sys) {
    return weighted_balancing(sys, FrequencyWeight::unity()).hankel;
}

}  // namespace coagg
