#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "coagg/lti/transfer_function.hpp"

namespace coagg {

/// First-order lag gain/(tau*s + 1).
struct FirstOrderTerm {
    double gain = 0.0;
    double time_constant = 0.0;
};

struct PartialFractionTerms {
    std::vector<FirstOrderTerm> terms;
    double direct = 0.0;
};

inline TransferFunction to_transfer(const FirstOrderTerm& t) {
    return TransferFunction::make({t.gain}, {t.time_constant, 1.0});
}

inline TransferFunction to_transfer(const PartialFractionTerms& pf) {
    Poly num{pf.direct}, den{1.0};
    for (const FirstOrderTerm& t : pf.terms) {
        Poly td{t.time_constant, 1.0};
        num = poly_add(poly_mul(num, td), poly_scale(den, t.gain));
        den = poly_mul(den, td);
    }
    return TransferFunction::make(num, den);
}

/// Expands a strictly proper function with simple, real, negative poles
/// into first-order lags, sorted by time constant.
inline PartialFractionTerms partial_fractions(const TransferFunction& g) {
    if (!g.strictly_proper())
        throw NotStrictlyProper("partial fraction expansion needs a strictly proper function");
    PartialFractionTerms out;
    if (g.is_zero()) return out;
    std::vector<Complex> ps = poly_roots(g.den);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        double mag = 1.0 + std::abs(ps[i]);
        if (std::abs(ps[i].imag()) > 1e-10 * mag)
            throw ComplexPoles("poles must be real for a first-order lag expansion");
        for (std::size_t j = i + 1; j < ps.size(); ++j)
            if (std::abs(ps[i] - ps[j]) <= 1e-10 * mag)
                throw RepeatedPoles("poles must be simple for a first-order lag expansion");
        if (ps[i].real() >= 0.0)
            throw PositivePole("poles must be negative for positive time constants");
    }
    Poly dden = poly_derivative(g.den);
    for (Complex pc : ps) {
        double p = pc.real();
        double residue = poly_eval(g.num, p) / poly_eval(dden, p);
        out.terms.push_back({residue / (-p), -1.0 / p});
    }
    std::sort(out.terms.begin(), out.terms.end(),
              [](const FirstOrderTerm& a, const FirstOrderTerm& b) {
                  return a.time_constant < b.time_constant;
              });
    return out;
}

}  // namespace coagg
