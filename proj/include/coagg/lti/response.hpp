#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "coagg/lti/state_space.hpp"

namespace coagg {

/// Uniformly sampled scalar signal.
struct Trajectory {
    double dt = 0.0;
    std::vector<double> times;
    std::vector<double> values;
};

/// n log-spaced points from lo to hi inclusive (lo, hi > 0).
inline std::vector<double> logspace(double lo, double hi, int n) {
    if (!(lo > 0.0) || !(hi > 0.0) || n < 2)
        throw ValidationError("logspace requires positive bounds and n >= 2");
    std::vector<double> pts(static_cast<std::size_t>(n));
    double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < n; ++i)
        pts[static_cast<std::size_t>(i)] = std::pow(10.0, llo + (lhi - llo) * i / (n - 1));
    return pts;
}

/// Step response with zero initial state under a constant input of the
/// given amplitude, sampled with an exact zero-order-hold discretization.
inline Trajectory step_response(const StateSpace& sys, double amplitude, double horizon,
                                double dt) {
    if (!(dt > 0.0) || !(horizon >= dt))
        throw ValidationError("step response needs dt > 0 and horizon >= dt");
    if (!poles(sys).stable) throw UnstableSystem("step response requires a stable model");
    int n = sys.n();
    long steps = std::lround(horizon / dt);
    Trajectory out;
    out.dt = dt;
    out.times.resize(static_cast<std::size_t>(steps) + 1);
    out.values.resize(static_cast<std::size_t>(steps) + 1);
    for (long k = 0; k <= steps; ++k) out.times[static_cast<std::size_t>(k)] = dt * k;
    if (n == 0) {
        for (long k = 0; k <= steps; ++k) out.values[static_cast<std::size_t>(k)] = sys.D * amplitude;
        return out;
    }
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n + 1, n + 1);
    M.topLeftCorner(n, n) = sys.A * dt;
    M.topRightCorner(n, 1) = sys.B * dt;
    Eigen::MatrixXd E = M.exp();
    Eigen::MatrixXd Ad = E.topLeftCorner(n, n);
    Eigen::VectorXd Bd = E.topRightCorner(n, 1) * amplitude;
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    double feed = sys.D * amplitude;
    for (long k = 0; k <= steps; ++k) {
        out.values[static_cast<std::size_t>(k)] = (sys.C * x)(0) + feed;
        if (k < steps) x = Ad * x + Bd;
    }
    return out;
}

inline Trajectory step_response(const TransferFunction& g, double amplitude, double horizon,
                                double dt) {
    return step_response(minimal_state_space(g), amplitude, horizon, dt);
}

/// Transfer function values at s = j*eta over a frequency grid.
inline std::vector<Complex> frequency_response(const TransferFunction& g,
                                               const std::vector<double>& etas) {
    double den_norm = 0.0;
    for (double c : g.den) den_norm += c * c;
    den_norm = std::sqrt(den_norm);
    std::vector<Complex> out;
    out.reserve(etas.size());
    for (double eta : etas) {
        Complex s(0.0, eta);
        Complex d = poly_eval(g.den, s);
        if (std::abs(d) < 1e-14 * den_norm)
            throw PoleOnGrid("frequency grid hits a pole of the model");
        out.push_back(poly_eval(g.num, s) / d);
    }
    return out;
}

inline std::vector<Complex> frequency_response(const StateSpace& sys,
                                               const std::vector<double>& etas) {
    PoleReport rep = poles(sys);
    std::vector<Complex> out;
    out.reserve(etas.size());
    for (double eta : etas) {
        for (Complex p : rep.values)
            if (std::abs(Complex(0.0, eta) - p) < 1e-12 * (1.0 + std::abs(eta)))
                throw PoleOnGrid("frequency grid hits a pole of the model");
        out.push_back(evaluate(sys, Complex(0.0, eta)));
    }
    return out;
}

inline double dc_gain(const StateSpace& sys) {
    if (sys.n() == 0) return sys.D;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys.A);
    lu.setThreshold(1e-12);
    if (!lu.isInvertible()) throw IntegratorPresent("model has a pole at s = 0");
    return sys.D - (sys.C * lu.solve(sys.B))(0);
}

}  // namespace coagg
