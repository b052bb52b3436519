#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Dense>
#include <cmath>
#include <random>
#include <vector>

#include "coagg/metrics/error_norms.hpp"
#include "coagg/network/group.hpp"
#include "coagg/reduction/fwbt.hpp"
#include "coagg/reduction/paths.hpp"
#include "helpers.hpp"

using namespace coagg;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

CoherentGroup table_group() {
    CoherentGroup g;
    const double m = 0.0683 / 5.0, d = 0.0107 / 5.0;
    g.generators = {
        SwingTurbine{m, d, 0.0218, 9.08}, SwingTurbine{m, d, 0.0256, 5.26},
        SwingTurbine{m, d, 0.0236, 2.29}, SwingTurbine{m, d, 0.0255, 7.97},
        SwingTurbine{m, d, 0.0192, 3.24},
    };
    g.inertia_override = 0.0683;
    g.damping_override = 0.0107;
    return g;
}

// values far below the dominant one sit at the conditioning floor of the
// gramian solves, so they only support an absolute comparison against it
void check_hankel(const Eigen::VectorXd& got, const std::vector<double>& want) {
    REQUIRE(got.size() == static_cast<Eigen::Index>(want.size()));
    for (Eigen::Index i = 0; i < got.size(); ++i) {
        double w = want[static_cast<std::size_t>(i)];
        CHECK_THAT(got(i), WithinRel(w, 1e-6) || WithinAbs(w, 1e-5 * want[0]));
    }
}

}  // namespace

TEST_CASE("weight construction is validated", "[fwbt]") {
    CHECK_THROWS_AS(FrequencyWeight::make(TransferFunction::make({1.0}, {1.0, -1.0})),
                    ValidationError);
    CHECK_THROWS_AS(FrequencyWeight::make(TransferFunction::make({0.0}, {1.0, 1.0})),
                    ValidationError);
    CHECK(FrequencyWeight::unity().tf.order() == 0);
    CHECK(FrequencyWeight::make(default_turbine_weight().tf).tf.order() == 1);
}

TEST_CASE("balancing rejects improper inputs", "[fwbt]") {
    auto w = FrequencyWeight::unity();
    StateSpace biproper{Eigen::MatrixXd::Constant(1, 1, -1.0),
                        Eigen::VectorXd::Ones(1), Eigen::RowVectorXd::Ones(1), 2.0};
    CHECK_THROWS_AS(weighted_balancing(biproper, w), NotStrictlyProper);
    StateSpace unstable{Eigen::MatrixXd::Constant(1, 1, 1.0),
                        Eigen::VectorXd::Ones(1), Eigen::RowVectorXd::Ones(1), 0.0};
    CHECK_THROWS_AS(weighted_balancing(unstable, w), UnstableInput);
    StateSpace empty{Eigen::MatrixXd::Zero(0, 0), Eigen::VectorXd::Zero(0),
                     Eigen::RowVectorXd::Zero(0), 0.0};
    CHECK_THROWS_AS(weighted_balancing(empty, w), ValidationError);
}

TEST_CASE("truncation order bounds", "[fwbt]") {
    auto sys = minimal_state_space(TransferFunction::make({1.0}, {1.0, 3.0, 2.0}));
    auto bal = weighted_balancing(sys, FrequencyWeight::unity());
    CHECK_THROWS_AS(truncate_balanced(bal, 0), OrderTooHigh);
    CHECK_THROWS_AS(truncate_balanced(bal, 3), OrderTooHigh);

    // uncontrollable direction leaves only one usable balanced state
    StateSpace part{(Eigen::MatrixXd(2, 2) << -1.0, 0.0, 0.0, -2.0).finished(),
                    (Eigen::VectorXd(2) << 1.0, 0.0).finished(),
                    (Eigen::RowVectorXd(2) << 1.0, 1.0).finished(), 0.0};
    auto bal2 = weighted_balancing(part, FrequencyWeight::unity());
    CHECK_NOTHROW(truncate_balanced(bal2, 1));
    CHECK_THROWS_AS(truncate_balanced(bal2, 2), OrderTooHigh);
}

TEST_CASE("full order balancing is a similarity transform", "[fwbt]") {
    auto group = table_group();
    TransferFunction ghat = coherent_aggregate(group);
    TransferFunction gt = aggregate_turbine(group);
    struct Case {
        TransferFunction tf;
        FrequencyWeight w;
    };
    std::vector<Case> cases = {{ghat, default_closed_loop_weight()},
                               {gt, default_turbine_weight()},
                               {ghat, FrequencyWeight::unity()}};
    for (const auto& c : cases) {
        auto sys = minimal_state_space(c.tf);
        auto bal = weighted_balancing(sys, c.w);
        int n = sys.n();
        StateSpace balanced = truncate_balanced(bal, n);
        CHECK(testutil::tf_distance(transfer_of(balanced), c.tf) < 1e-8);

        // in balanced coordinates both gramians are diag(hankel); compare the
        // squares, the sqrt factors amplify noise in the smallest directions
        auto rebal = weighted_balancing(balanced, c.w);
        Eigen::MatrixXd xc = rebal.Xc_half * rebal.Xc_half;
        Eigen::MatrixXd yo = rebal.Yo_half * rebal.Yo_half;
        Eigen::MatrixXd want = bal.hankel.asDiagonal();
        CHECK((xc - want).cwiseAbs().maxCoeff() < 1e-5 * bal.hankel(0));
        CHECK((yo - want).cwiseAbs().maxCoeff() < 1e-5 * bal.hankel(0));
        for (int i = 0; i < n; ++i)
            CHECK_THAT(rebal.hankel(i),
                       WithinRel(bal.hankel(i), 1e-6) ||
                           WithinAbs(bal.hankel(i), 1e-5 * bal.hankel(0)));
    }
}

TEST_CASE("weighted hankel values of the five machine aggregate", "[fwbt]") {
    auto group = table_group();
    auto ghat_ss = minimal_state_space(coherent_aggregate(group));
    auto gt_ss = minimal_state_space(aggregate_turbine(group));

    check_hankel(weighted_hankel_values(ghat_ss, default_closed_loop_weight()),
                 {127.392232568, 18.555269436, 1.10391595068, 0.0216070667994,
                  0.000525206657502, 1.26342328017e-05});
    check_hankel(weighted_hankel_values(gt_ss, default_turbine_weight()),
                 {0.392901849873, 0.00463483635871, 0.000124390617309,
                  3.00444405703e-06, 7.68513175371e-08});
    check_hankel(hankel_singular_values(ghat_ss),
                 {18.6281897327, 14.1681647501, 0.489328204459, 0.0146111243557,
                  0.000381488663496, 7.96240786366e-06});
}

TEST_CASE("reduced turbine dynamics match the published coefficients", "[fwbt]") {
    auto gt_ss = minimal_state_space(aggregate_turbine(table_group()));
    auto red = fw_balanced_truncation(gt_ss, default_turbine_weight(), 2);
    TransferFunction tf = transfer_of(red).monic();
    REQUIRE(tf.order() == 2);
    REQUIRE(tf.num_degree() == 1);
    CHECK_THAT(tf.num[0], WithinRel(0.0266432003, 1e-6));
    CHECK_THAT(tf.num[1], WithinRel(0.0056605043, 1e-6));
    CHECK_THAT(tf.den[1], WithinRel(0.504663553, 1e-6));
    CHECK_THAT(tf.den[2], WithinRel(0.0489249413, 1e-6));
    // rounded values as published
    CHECK_THAT(tf.num[0], WithinRel(0.0266, 2e-2));
    CHECK_THAT(tf.num[1], WithinRel(0.0057, 2e-2));
    CHECK_THAT(tf.den[1], WithinRel(0.5046, 2e-2));
    CHECK_THAT(tf.den[2], WithinRel(0.0489, 2e-2));
}

TEST_CASE("unweighted truncation error stays under twice the tail", "[fwbt]") {
    auto g = TransferFunction::make({1.0}, {1.0, 11.0, 10.0});
    auto sys = minimal_state_space(g);
    auto bal = weighted_balancing(sys, FrequencyWeight::unity());
    REQUIRE(bal.hankel.size() == 2);
    auto red = truncate_balanced(bal, 1);
    CHECK(poles(red).stable);
    double err = hinf_norm(tf_sub(g, transfer_of(red)));
    CHECK(err <= 2.0 * bal.hankel(1) * (1.0 + 1e-6));
}

TEST_CASE("truncation error bound holds across random plants", "[fwbt][property]") {
    std::mt19937 rng(4242);
    int tested = 0;
    for (int trial = 0; trial < 100; ++trial) {
        int order = 2 + trial % 5;
        TransferFunction g = testutil::random_stable_tf(rng, order);
        auto sys = minimal_state_space(g);
        if (sys.n() != order) continue;  // unlikely accidental cancellation
        auto bal = weighted_balancing(sys, FrequencyWeight::unity());
        for (int k = 1; k < order; ++k) {
            if (bal.hankel(k) < 1e-8 * bal.hankel(0)) break;
            auto red = truncate_balanced(bal, k);
            CHECK(poles(red).stable);
            double tail = 0.0;
            for (int i = k; i < order; ++i) tail += bal.hankel(i);
            double err = hinf_norm(tf_sub(g, transfer_of(red)));
            // absolute slack covers gramian roundoff when the tail sits
            // near the noise floor of the dominant Hankel value
            CHECK(err <= 2.0 * tail * (1.0 + 1e-6) + 1e-9 * bal.hankel(0));
            ++tested;
        }
        // full order reproduces the plant
        auto full = truncate_balanced(bal, order);
        CHECK(testutil::tf_distance(transfer_of(full), g) < 1e-8);
    }
    CHECK(tested > 150);
}

TEST_CASE("weighted truncations of the aggregate are stable", "[fwbt]") {
    auto group = table_group();
    auto ghat_ss = minimal_state_space(coherent_aggregate(group));
    for (int k = 1; k <= ghat_ss.n(); ++k) {
        auto red = fw_balanced_truncation(ghat_ss, default_closed_loop_weight(), k);
        CHECK(poles(red).stable);
        REQUIRE(red.n() == k);
    }
}
