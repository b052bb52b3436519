#include <catch2/catch_amalgamated.hpp>

#include "coagg/lti/polynomial.hpp"

#include <random>

#include "helpers.hpp"

using namespace coagg;

TEST_CASE("trim and degree") {
    CHECK(poly_trim({0.0, 0.0, 1.0, 2.0}) == Poly{1.0, 2.0});
    CHECK(poly_trim({0.0, 0.0}) == Poly{0.0});
    CHECK(poly_degree({1.0, 2.0, 3.0}) == 2);
    CHECK(poly_degree({0.0}) == -1);
}

TEST_CASE("division examples") {
    // (s^2 + 3s + 2) / (s + 1) = s + 2 exactly
    auto [q1, r1] = poly_divide({1.0, 3.0, 2.0}, {1.0, 1.0});
    CHECK(q1 == Poly{1.0, 2.0});
    CHECK(r1 == Poly{0.0});

    // s^2 / (s + 1) = s - 1 remainder 1
    auto [q2, r2] = poly_divide({1.0, 0.0, 0.0}, {1.0, 1.0});
    CHECK(q2 == Poly{1.0, -1.0});
    CHECK(r2 == Poly{1.0});

    // degree(remainder) < degree(divisor)
    auto [q3, r3] = poly_divide({2.0, 1.0, 4.0, -1.0}, {1.0, 0.0, 2.0});
    CHECK(poly_degree(r3) < 2);
    CHECK(poly_degree(q3) == 1);

    CHECK_THROWS_AS(poly_divide({1.0, 2.0}, {0.0}), ZeroDivisor);
}

TEST_CASE("division reconstructs the dividend", "[property]") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> coeff(-3.0, 3.0);
    std::uniform_int_distribution<int> deg(0, 10);
    for (int trial = 0; trial < 200; ++trial) {
        Poly a(static_cast<std::size_t>(deg(rng)) + 1), b(static_cast<std::size_t>(deg(rng)) + 1);
        for (double& c : a) c = coeff(rng);
        for (double& c : b) c = coeff(rng);
        if (std::abs(b[0]) < 0.1) b[0] += 1.0;
        auto [q, r] = poly_divide(a, b);
        Poly back = poly_add(poly_mul(q, b), r);
        Poly at = poly_trim(a);
        // the roundoff scale is set by the q*b products, not by a itself
        double scale = 0.0;
        for (double c : at) scale = std::max(scale, std::abs(c));
        double qmax = 0.0, bmax = 0.0;
        for (double c : q) qmax = std::max(qmax, std::abs(c));
        for (double c : b) bmax = std::max(bmax, std::abs(c));
        double tol = 1e-13 * static_cast<double>(at.size()) *
                     std::max(1.0, std::max(scale, qmax * bmax));
        REQUIRE(back.size() == at.size());
        for (std::size_t i = 0; i < back.size(); ++i)
            REQUIRE(std::abs(back[i] - at[i]) <= tol);
    }
}

TEST_CASE("roots round trip") {
    Poly p{1.0, 2.0, 5.0};  // roots -1 +- 2j
    auto roots = poly_roots(p);
    REQUIRE(roots.size() == 2);
    CHECK_THAT(roots[0].real(), Catch::Matchers::WithinAbs(-1.0, 1e-12));
    CHECK_THAT(std::abs(roots[0].imag()), Catch::Matchers::WithinAbs(2.0, 1e-12));
    Poly back = poly_from_roots(roots);
    for (std::size_t i = 0; i < p.size(); ++i)
        CHECK_THAT(back[i], Catch::Matchers::WithinAbs(p[i], 1e-10));
}

TEST_CASE("evaluation") {
    Poly p{1.0, -2.0, 1.0};  // (s-1)^2
    CHECK(poly_eval(p, 1.0) == 0.0);
    CHECK(poly_eval(p, 3.0) == 4.0);
    Complex v = poly_eval(p, Complex(0.0, 1.0));  // (j-1)^2 = -2j
    CHECK_THAT(v.real(), Catch::Matchers::WithinAbs(0.0, 1e-14));
    CHECK_THAT(v.imag(), Catch::Matchers::WithinAbs(-2.0, 1e-14));
}

TEST_CASE("derivative") {
    CHECK(poly_derivative({3.0, 2.0, 1.0}) == Poly{6.0, 2.0});
    CHECK(poly_derivative({5.0}) == Poly{0.0});
}

TEST_CASE("common root cancellation") {
    // (s+1)(s+3) / (s+1)(s+2) -> (s+3)/(s+2)
    Poly num = poly_mul({1.0, 1.0}, {1.0, 3.0});
    Poly den = poly_mul({1.0, 1.0}, {1.0, 2.0});
    auto [n2, d2] = cancel_common_roots(num, den, 1e-8);
    REQUIRE(n2.size() == 2);
    REQUIRE(d2.size() == 2);
    CHECK_THAT(n2[1] / n2[0], Catch::Matchers::WithinAbs(3.0, 1e-10));
    CHECK_THAT(d2[1] / d2[0], Catch::Matchers::WithinAbs(2.0, 1e-10));

    // nothing shared: untouched
    auto [n3, d3] = cancel_common_roots({1.0, 5.0}, {1.0, 2.0}, 1e-8);
    CHECK(n3 == Poly{1.0, 5.0});
    CHECK(d3 == Poly{1.0, 2.0});
}
