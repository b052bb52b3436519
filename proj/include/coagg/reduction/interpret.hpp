#pragma once

#include <cmath>
#include <vector>

#include "coagg/lti/partial_fractions.hpp"
#include "coagg/network/group.hpp"

namespace coagg {

/// Reduced model read back as generator parameters. When the reduced
/// dynamics have no such realization with positive constants, the raw
/// division result is kept and residual_flag is set.
struct EquivalentGenerator {
    double m = 0.0;
    double d = 0.0;
    std::vector<FirstOrderTerm> turbines;
    bool residual_flag = false;
    Poly quotient{0.0};
    Poly remainder{0.0};
};

/// Reads an order 2 or 3 reduced model g = N/D (deg N = deg D - 1) as an
/// equivalent generator: normalize N monic, divide D = Q N + R, so that
/// g^{-1} = Q(s) + R(s)/N(s) with Q = m s + d and R/N the turbine lags.
inline EquivalentGenerator interpret_reduced(const TransferFunction& g) {
    int n = g.order();
    if (n != 2 && n != 3)
        throw WrongOrder("interpretation is defined for orders 2 and 3");
    if (g.num_degree() != n - 1)
        throw WrongOrder("interpretation needs relative degree one");

    double lead = g.num[0];
    Poly N = poly_scale(g.num, 1.0 / lead);
    Poly D = poly_scale(g.den, 1.0 / lead);
    auto [Q, R] = poly_divide(D, N);

    EquivalentGenerator eq;
    eq.quotient = Q;
    eq.remainder = R;
    eq.m = Q[0];
    eq.d = Q[1];
    if (!(eq.m > 0.0) || !(eq.d > 0.0)) eq.residual_flag = true;

    double den_scale = 0.0;
    for (double c : D) den_scale = std::max(den_scale, std::abs(c));
    bool remainder_zero = true;
    for (double c : R) remainder_zero = remainder_zero && std::abs(c) <= 1e-12 * den_scale;
    if (remainder_zero) return eq;

    try {
        PartialFractionTerms pf =
            partial_fractions(TransferFunction::make(R, N));
        for (const FirstOrderTerm& t : pf.terms)
            if (!(t.gain > 0.0)) eq.residual_flag = true;
        eq.turbines = pf.terms;
    } catch (const ComplexPoles&) {
        eq.residual_flag = true;
    } catch (const RepeatedPoles&) {
        eq.residual_flag = true;
    } catch (const PositivePole&) {
        eq.residual_flag = true;
    }
    return eq;
}

/// Rebuilds the transfer function of an interpreted generator.
inline TransferFunction reconstruct(const EquivalentGenerator& eq) {
    return aggregate_from_parts(eq.m, eq.d,
                                to_transfer(PartialFractionTerms{eq.turbines, 0.0}));
}

}  // namespace coagg
