#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "coagg/errors.hpp"

namespace coagg {

/// Undirected weighted edge, node indices 0-based.
struct Edge {
    int a = 0;
    int b = 0;
    double weight = 0.0;
};

/// Weighted graph Laplacian of the coupling network, spectrum cached.
class NetworkSpec {
  public:
    static NetworkSpec from_laplacian(Eigen::MatrixXd L,
                                      std::vector<std::string> metadata = {}) {
        if (L.rows() != L.cols()) throw ValidationError("laplacian must be square");
        int n = static_cast<int>(L.rows());
        double scale = std::max(1e-300, L.cwiseAbs().maxCoeff());
        if ((L - L.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
            throw ValidationError("laplacian must be symmetric");
        for (int i = 0; i < n; ++i) {
            if (std::abs(L.row(i).sum()) > 1e-9 * scale)
                throw ValidationError("laplacian rows must sum to zero");
            for (int j = 0; j < n; ++j)
                if (i != j && L(i, j) > 1e-12 * scale)
                    throw ValidationError("laplacian off-diagonals must be <= 0");
        }
        NetworkSpec net;
        net.L_ = std::move(L);
        net.metadata_ = std::move(metadata);
        net.computeSpectrum();
        if (n >= 2 && !(net.eigs_(1) > 1e-9 * std::max(1.0, net.eigs_(n - 1))))
            throw ValidationError("network must be connected");
        return net;
    }

    static NetworkSpec from_edges(int n, const std::vector<Edge>& edges,
                                  std::vector<std::string> metadata = {}) {
        if (n < 1) throw ValidationError("network needs at least one node");
        Eigen::MatrixXd L = Eigen::MatrixXd::Zero(n, n);
        for (const Edge& e : edges) {
            if (e.a < 0 || e.b < 0 || e.a >= n || e.b >= n)
                throw ValidationError("edge endpoint out of range");
            if (e.a == e.b) throw ValidationError("self loops are not allowed");
            if (!(e.weight > 0.0)) throw ValidationError("edge weights must be > 0");
            L(e.a, e.a) += e.weight;
            L(e.b, e.b) += e.weight;
            L(e.a, e.b) -= e.weight;
            L(e.b, e.a) -= e.weight;
        }
        return from_laplacian(std::move(L), std::move(metadata));
    }

    /// Same topology with every weight multiplied by alpha > 0.
    NetworkSpec scaled(double alpha) const {
        if (!(alpha > 0.0)) throw ValidationError("scale factor must be > 0");
        NetworkSpec net;
        net.L_ = alpha * L_;
        net.eigs_ = alpha * eigs_;
        net.metadata_ = metadata_;
        return net;
    }

    const Eigen::MatrixXd& laplacian() const { return L_; }
    int size() const { return static_cast<int>(L_.rows()); }

    /// Eigenvalues in ascending order; the first is zero for a connected graph.
    const Eigen::VectorXd& eigenvalues() const { return eigs_; }

    /// Algebraic connectivity.
    double lambda2() const {
        if (size() < 2) throw ValidationError("lambda2 needs at least two nodes");
        return eigs_(1);
    }

    const std::vector<std::string>& metadata() const { return metadata_; }

  private:
    void computeSpectrum() {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L_);
        if (es.info() != Eigen::Success) throw NumericalError("laplacian eigensolve failed");
        eigs_ = es.eigenvalues();
    }

    Eigen::MatrixXd L_;
    Eigen::VectorXd eigs_;
    std::vector<std::string> metadata_;
};

}  // namespace coagg
