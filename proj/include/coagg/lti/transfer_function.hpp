#pragma once

#include <cmath>
#include <utility>

#include "coagg/lti/polynomial.hpp"

namespace coagg {

/// Proper rational transfer function num(s)/den(s), coefficients descending.
struct TransferFunction {
    Poly num{0.0};
    Poly den{1.0};

    static TransferFunction make(Poly num, Poly den) {
        Poly n = poly_trim(num), d = poly_trim(den);
        if (poly_degree(d) < 0)
            throw ValidationError("transfer function denominator is zero");
        if (poly_degree(n) > poly_degree(d))
            throw ImproperTransfer("numerator degree exceeds denominator degree");
        return TransferFunction{std::move(n), std::move(d)};
    }

    int order() const { return poly_degree(den); }
    int num_degree() const { return poly_degree(num); }
    bool strictly_proper() const { return num_degree() < order(); }
    bool is_zero() const { return poly_degree(num) < 0; }

    Complex at(Complex s) const { return poly_eval(num, s) / poly_eval(den, s); }

    /// Same function with a monic denominator.
    TransferFunction monic() const {
        double lead = den[0];
        return TransferFunction{poly_scale(num, 1.0 / lead), poly_scale(den, 1.0 / lead)};
    }
};

inline double dc_gain(const TransferFunction& g) {
    double d0 = g.den.back();
    double scale = 0.0;
    for (double c : g.den) scale = std::max(scale, std::abs(c));
    if (std::abs(d0) <= 1e-12 * scale)
        throw IntegratorPresent("transfer function has a pole at s = 0");
    return g.num.back() / d0;
}

inline TransferFunction tf_scale(const TransferFunction& g, double k) {
    return TransferFunction{poly_scale(g.num, k), g.den};
}

inline TransferFunction tf_mul(const TransferFunction& a, const TransferFunction& b) {
    return TransferFunction::make(poly_mul(a.num, b.num), poly_mul(a.den, b.den));
}

/// Difference over the common denominator a.den*b.den, no cancellation.
inline TransferFunction tf_sub(const TransferFunction& a, const TransferFunction& b) {
    Poly num = poly_sub(poly_mul(a.num, b.den), poly_mul(b.num, a.den));
    return TransferFunction::make(std::move(num), poly_mul(a.den, b.den));
}

}  // namespace coagg
