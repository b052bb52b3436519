#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "coagg/lti/response.hpp"
#include "coagg/network/group.hpp"
#include "coagg/network/laplacian.hpp"

namespace coagg {

/// Symmetric logarithmic band grid: per_side points on each of
/// [-eta0, -1e-3*eta0] and [1e-3*eta0, eta0], ascending.
inline std::vector<double> band_grid(double eta0, int per_side = 200) {
    if (!(eta0 > 0.0)) throw ValidationError("eta0 must be > 0");
    std::vector<double> pos = logspace(1e-3 * eta0, eta0, per_side);
    std::vector<double> grid;
    grid.reserve(2 * pos.size());
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) grid.push_back(-*it);
    for (double eta : pos) grid.push_back(eta);
    return grid;
}

/// Sum of the generator admittances at s; its reciprocal is the exact
/// aggregate evaluated pointwise.
inline Complex admittance_sum_at(const CoherentGroup& group, Complex s) {
    Complex acc = 0.0;
    for (const GeneratorModel& g : group.generators) acc += generator_inverse_at(g, s);
    return acc;
}

/// Closed-loop frequency response matrix of the coupled network at eta,
/// T(j eta) = (diag(g_i^{-1}) + L/(j eta))^{-1}.
inline Eigen::MatrixXcd network_response(const CoherentGroup& group, const NetworkSpec& net,
                                         double eta) {
    validate(group);
    if (group.size() != net.size())
        throw ValidationError("generator count must match the network size");
    if (eta == 0.0) throw ValidationError("network response is undefined at eta = 0");
    int n = net.size();
    Complex s(0.0, eta);
    Eigen::MatrixXcd M = net.laplacian().cast<Complex>() / s;
    for (int i = 0; i < n; ++i)
        M(i, i) += generator_inverse_at(group.generators[static_cast<std::size_t>(i)], s);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    double smin = svd.singularValues()(n - 1), smax = svd.singularValues()(0);
    if (!(smin > 1e-14 * smax))
        throw SingularAtFrequency("coupled response is singular on the grid");
    return svd.solve(Eigen::MatrixXcd::Identity(n, n));
}

/// Worst-case deviation of the coupled response from coherent motion,
/// max over the band grid of || T(j eta) - g_hat(j eta) 11^T ||_2.
inline double coherence_gap(const CoherentGroup& group, const NetworkSpec& net,
                            double eta0 = 5.0, int per_side = 200) {
    validate(group);
    if (group.size() != net.size())
        throw ValidationError("generator count must match the network size");
    if (group.size() == 1) return 0.0;
    int n = group.size();
    Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(n, n);
    double gap = 0.0;
    for (double eta : band_grid(eta0, per_side)) {
        Complex ghat = 1.0 / admittance_sum_at(group, Complex(0.0, eta));
        Eigen::MatrixXcd diff = network_response(group, net, eta) - ghat * ones;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(diff);
        gap = std::max(gap, svd.singularValues()(0));
    }
    return gap;
}

struct BandConstants {
    double M1 = 0.0;  // max |n * g_hat(j eta)| over the band
    double M2 = 0.0;  // max_i |g_i^{-1}(j eta)| over the band
};

inline BandConstants band_constants(const CoherentGroup& group, double eta0,
                                    int per_side = 200) {
    validate(group);
    int n = group.size();
    BandConstants out;
    for (double eta : band_grid(eta0, per_side)) {
        Complex s(0.0, eta);
        out.M1 = std::max(out.M1, std::abs(double(n) / admittance_sum_at(group, s)));
        for (const GeneratorModel& g : group.generators)
            out.M2 = std::max(out.M2, std::abs(generator_inverse_at(g, s)));
    }
    return out;
}

/// Coherence bound in terms of the band constants and the connectivity
/// ratio rho = lambda2/eta0. Only valid for rho > M2 + M1*M2^2.
inline double lemma2_bound(double M1, double M2, double lambda2, double eta0) {
    if (!(M1 >= 0.0) || !(M2 >= 0.0) || !(lambda2 > 0.0) || !(eta0 > 0.0))
        throw ValidationError("bound constants must be nonnegative, lambda2 and eta0 positive");
    double rho = lambda2 / eta0;
    if (!(rho > M2 + M1 * M2 * M2))
        throw NotApplicable("connectivity too weak for the coherence bound");
    double a = rho - M2;
    double b = rho - M2 - M1 * M2 * M2;
    return (M1 * M1 * M2 * M2 + 2.0 * M1 * M2 + M1 * M2 * M2 / a) / b + 1.0 / a;
}

/// State matrix of the interconnection: generator blocks driven by the
/// electrical power -L theta, angle dynamics reduced to the subspace
/// orthogonal to uniform rotation.
inline Eigen::MatrixXd coupled_dynamics(const CoherentGroup& group, const NetworkSpec& net) {
    validate(group);
    if (group.size() != net.size())
        throw ValidationError("generator count must match the network size");
    int n = group.size();
    std::vector<StateSpace> gens;
    int nx = 0;
    for (const GeneratorModel& g : group.generators) {
        gens.push_back(generator_state_space(g));
        nx += gens.back().n();
    }
    Eigen::MatrixXd Ablk = Eigen::MatrixXd::Zero(nx, nx);
    Eigen::MatrixXd Bblk = Eigen::MatrixXd::Zero(nx, n);
    Eigen::MatrixXd Cblk = Eigen::MatrixXd::Zero(n, nx);
    int off = 0;
    for (int i = 0; i < n; ++i) {
        int ni = gens[static_cast<std::size_t>(i)].n();
        Ablk.block(off, off, ni, ni) = gens[static_cast<std::size_t>(i)].A;
        Bblk.block(off, i, ni, 1) = gens[static_cast<std::size_t>(i)].B;
        Cblk.block(i, off, 1, ni) = gens[static_cast<std::size_t>(i)].C;
        off += ni;
    }
    // orthonormal basis of the subspace orthogonal to the all-ones vector
    Eigen::MatrixXd ones = Eigen::MatrixXd::Ones(n, 1);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(ones);
    Eigen::MatrixXd Q = qr.householderQ();
    Eigen::MatrixXd V = Q.rightCols(n - 1);

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(nx + n - 1, nx + n - 1);
    A.topLeftCorner(nx, nx) = Ablk;
    A.topRightCorner(nx, n - 1) = -Bblk * net.laplacian() * V;
    A.bottomLeftCorner(n - 1, nx) = V.transpose() * Cblk;
    return A;
}

}  // namespace coagg
