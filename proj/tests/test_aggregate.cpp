#include <catch2/catch_amalgamated.hpp>

#include "coagg/network/group.hpp"

#include <random>

#include "helpers.hpp"

using namespace coagg;
using testutil::tf_distance;

namespace {

CoherentGroup table_group() {
    CoherentGroup g;
    double n = 5.0;
    double m = 0.0683 / n, d = 0.0107 / n;
    g.generators = {SwingTurbine{m, d, 0.0218, 9.08}, SwingTurbine{m, d, 0.0256, 5.26},
                    SwingTurbine{m, d, 0.0236, 2.29}, SwingTurbine{m, d, 0.0255, 7.97},
                    SwingTurbine{m, d, 0.0192, 3.24}};
    g.inertia_override = 0.0683;
    g.damping_override = 0.0107;
    return g;
}

}  // namespace

TEST_CASE("pure swing groups add inertia and damping") {
    CoherentGroup g;
    g.generators = {Swing{1.0, 0.5}, Swing{2.0, 0.5}};
    CHECK(tf_distance(coherent_aggregate(g), TransferFunction::make({1.0}, {3.0, 1.0})) <
          1e-14);

    std::mt19937 rng(83);
    std::uniform_real_distribution<double> mval(0.1, 5.0), dval(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        CoherentGroup grp;
        double msum = 0.0, dsum = 0.0;
        int n = std::uniform_int_distribution<int>(1, 8)(rng);
        for (int i = 0; i < n; ++i) {
            double m = mval(rng), d = dval(rng) + 0.01;
            grp.generators.push_back(Swing{m, d});
            msum += m;
            dsum += d;
        }
        REQUIRE(tf_distance(coherent_aggregate(grp),
                            TransferFunction::make({1.0}, {msum, dsum})) < 1e-9);
    }
}

TEST_CASE("pure inverter groups aggregate to one inverter") {
    std::mt19937 rng(89);
    std::uniform_real_distribution<double> kval(0.2, 4.0), tval(0.5, 9.0);
    for (int trial = 0; trial < 50; ++trial) {
        CoherentGroup grp;
        double inv_k = 0.0, tau_over_k = 0.0;
        int n = std::uniform_int_distribution<int>(1, 8)(rng);
        for (int i = 0; i < n; ++i) {
            double k = kval(rng), t = tval(rng);
            grp.generators.push_back(DroopInverter{k, t});
            inv_k += 1.0 / k;
            tau_over_k += t / k;
        }
        double k_hat = 1.0 / inv_k;
        double tau_hat = k_hat * tau_over_k;
        REQUIRE(tf_distance(coherent_aggregate(grp),
                            TransferFunction::make({k_hat}, {tau_hat, 1.0})) < 1e-9);
    }
}

TEST_CASE("shared turbine lags collapse instead of repeating poles") {
    std::mt19937 rng(97);
    std::uniform_real_distribution<double> rval(0.01, 0.05), mval(0.05, 0.5);
    for (int trial = 0; trial < 50; ++trial) {
        CoherentGroup grp;
        double tau = std::uniform_real_distribution<double>(1.0, 9.0)(rng);
        double rsum = 0.0, msum = 0.0, dsum = 0.0;
        int n = std::uniform_int_distribution<int>(2, 8)(rng);
        for (int i = 0; i < n; ++i) {
            double r = rval(rng), m = mval(rng), d = 0.01;
            grp.generators.push_back(SwingTurbine{m, d, r, tau});
            rsum += r;
            msum += m;
            dsum += d;
        }
        TransferFunction gt = aggregate_turbine(grp);
        REQUIRE(gt.order() == 1);  // one shared lag, not n repeated ones
        REQUIRE_THAT(dc_gain(gt), Catch::Matchers::WithinRel(rsum, 1e-12));
        TransferFunction expect = aggregate_from_parts(
            msum, dsum, TransferFunction::make({rsum}, {tau, 1.0}));
        REQUIRE(tf_distance(coherent_aggregate(grp), expect) < 1e-10);
    }
}

TEST_CASE("aggregate inverts the admittance sum pointwise", "[property]") {
    CoherentGroup grp;
    grp.generators = {Swing{0.4, 0.05}, SwingTurbine{0.2, 0.02, 0.03, 4.0},
                      SwingTurbine{0.15, 0.01, 0.025, 7.5}, DroopInverter{1.5, 3.0}};
    TransferFunction ghat = coherent_aggregate(grp);
    std::mt19937 rng(101);
    std::uniform_real_distribution<double> freq(-3.0, 2.0);
    for (int k = 0; k < 50; ++k) {
        Complex s(0.0, std::pow(10.0, freq(rng)));
        Complex sum = 0.0;
        for (const GeneratorModel& g : grp.generators) sum += generator_inverse_at(g, s);
        Complex direct = 1.0 / sum;
        REQUIRE(std::abs(ghat.at(s) - direct) <= 1e-9 * std::abs(direct));
    }
}

TEST_CASE("a singleton group is the generator itself") {
    std::vector<GeneratorModel> gens{Swing{0.7, 0.3}, SwingTurbine{0.3, 0.1, 0.02, 5.0},
                                     DroopInverter{2.0, 4.0}};
    for (const GeneratorModel& g : gens) {
        CoherentGroup grp;
        grp.generators = {g};
        CHECK(tf_distance(coherent_aggregate(grp), generator_transfer(g)) < 1e-12);
    }
}

TEST_CASE("published five-generator aggregate") {
    CoherentGroup grp = table_group();
    CHECK_THAT(aggregate_inertia(grp), Catch::Matchers::WithinRel(0.0683, 1e-15));
    CHECK_THAT(aggregate_damping(grp), Catch::Matchers::WithinRel(0.0107, 1e-15));

    TransferFunction gt = aggregate_turbine(grp);
    CHECK(gt.order() == 5);
    CHECK_THAT(dc_gain(gt), Catch::Matchers::WithinRel(0.1157, 1e-12));

    TransferFunction ghat = coherent_aggregate(grp);
    REQUIRE(ghat.order() == 6);
    CHECK(ghat.num_degree() == 5);
    CHECK_THAT(dc_gain(ghat), Catch::Matchers::WithinRel(7.911392405063291, 1e-12));

    // frozen monic coefficients from an independent implementation
    TransferFunction m = ghat.monic();
    const double den[] = {1.0,           1.3277017257,   1.0850479750, 0.52549418450,
                          0.13070865370, 0.015216156307, 0.00065526347952};
    const double num[] = {14.641288433, 17.145533521, 7.4770781793,
                          1.5181195097, 0.14432385498, 0.0051840465152};
    REQUIRE(m.den.size() == 7);
    REQUIRE(m.num.size() == 6);
    for (std::size_t i = 0; i < 7; ++i)
        CHECK_THAT(m.den[i], Catch::Matchers::WithinRel(den[i], 1e-8));
    for (std::size_t i = 0; i < 6; ++i)
        CHECK_THAT(m.num[i], Catch::Matchers::WithinRel(num[i], 1e-8));

    PoleReport rep = poles(ghat);
    CHECK(rep.stable);
}

TEST_CASE("overrides only pin the aggregate sums") {
    CoherentGroup grp;
    grp.generators = {Swing{1.0, 0.5}, Swing{2.0, 0.5}};
    grp.inertia_override = 10.0;
    CHECK(aggregate_inertia(grp) == 10.0);
    CHECK(aggregate_damping(grp) == 1.0);
    CHECK(effective_inertias(grp) == std::vector<double>{1.0, 2.0});
    CHECK(tf_distance(coherent_aggregate(grp), TransferFunction::make({1.0}, {10.0, 1.0})) <
          1e-14);
}

TEST_CASE("empty group rejected") {
    CHECK_THROWS_AS(coherent_aggregate(CoherentGroup{}), ValidationError);
}
