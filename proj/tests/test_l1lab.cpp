#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "auglab/l1lab.hpp"
#include "auglab/rng.hpp"

using namespace auglab;

TEST_CASE("build_domain geometry") {
    L1Problem p1 = L1Problem::create(1, 0.5, 0.25, 0.125);
    L1Instance inst1 = build_domain(p1);
    Vector x1 = inst1.domain.points[0];
    CHECK(x1[0] == doctest::Approx(1.5));
    CHECK(x1[1] == doctest::Approx(1.0));
    CHECK(x1[2] == doctest::Approx(0.0));

    L1Problem p4 = L1Problem::create(4, 0.5);
    L1Instance inst4 = build_domain(p4);
    double total = 0.0;
    for (double p : inst4.domain.probs) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
    double target = 4 * (2.0 + 0.5);
    for (const auto& x : inst4.domain.points)
        CHECK(x.dot(inst4.model.theta_star) == doctest::Approx(target).epsilon(1e-12));

    // T(x1) = T(x2) = {x1, x2}; x3 only maps to itself.
    CHECK(inst4.domain.perturbation_sets[0] == std::vector<int>{0, 1});
    CHECK(inst4.domain.perturbation_sets[1] == std::vector<int>{0, 1});
    CHECK(inst4.domain.perturbation_sets[2] == std::vector<int>{2});
}

TEST_CASE("closed-form conditional estimators") {
    L1Problem p = L1Problem::create(1, 0.5, 0.25, 0.125);
    auto [est_std, est_aug] = conditional_estimators_E1(p);
    CHECK(est_std.theta[0] == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
    CHECK(est_std.theta[1] == 0.0);
    CHECK(est_aug.theta[1] == doctest::Approx(2.5).epsilon(1e-12));

    // Augmented norm exceeds the standard norm per block.
    CHECK(est_aug.achieved_norm > est_std.achieved_norm);
    CHECK(est_std.achieved_norm == doctest::Approx(2.5 / 1.5).epsilon(1e-12));
    CHECK(est_aug.achieved_norm == doctest::Approx(2.5).epsilon(1e-12));
}

TEST_CASE("closed forms interpolate and are l1-optimal at small d") {
    for (int d = 1; d <= 4; ++d) {
        L1Problem p = L1Problem::create(d, 0.5, 0.2, 0.1);
        L1Instance inst = build_domain(p);
        auto [est_std, est_aug] = conditional_estimators_E1(p);
        double target = d * 2.5;

        // All-x1 standard system.
        Matrix x_std(3, p.dim());
        for (int r = 0; r < 3; ++r) x_std.row(r) = inst.domain.points[0].transpose();
        Vector y_std = Vector::Constant(3, target);
        CHECK((x_std * est_std.theta - y_std).norm() <= 1e-10);
        Estimator lp_std = l1_fit({x_std, y_std});
        CHECK(lp_std.achieved_norm == doctest::Approx(est_std.achieved_norm).epsilon(1e-8));

        // Augmented with x2.
        Matrix x_ext(1, p.dim());
        x_ext.row(0) = inst.domain.points[1].transpose();
        Vector y_ext = Vector::Constant(1, target);
        CHECK((x_ext * est_aug.theta - y_ext).norm() <= 1e-10);
        CHECK((x_std * est_aug.theta - y_std).norm() <= 1e-10);
        Estimator lp_aug = l1_fit({x_std, y_std}, ExtraData{x_ext, y_ext});
        CHECK(lp_aug.achieved_norm == doctest::Approx(est_aug.achieved_norm).epsilon(1e-8));
    }
}

TEST_CASE("conditional error formulas match direct evaluation") {
    L1Problem p = L1Problem::create(10, 0.5, 0.01, 0.001);
    auto [err_std, err_aug] = conditional_errors_E1(p);
    CHECK(err_aug / err_std == doctest::Approx((p.p - p.eps) / p.eps).epsilon(1e-12));
    CHECK(err_aug / err_std == doctest::Approx(9.0).epsilon(1e-12));

    L1Instance inst = build_domain(p);
    auto [est_std, est_aug] = conditional_estimators_E1(p);
    double direct_std = standard_error(est_std.theta, inst.model);
    double direct_aug = standard_error(est_aug.theta, inst.model);
    CHECK(std::abs(direct_std - err_std) <= 1e-10 * (1.0 + std::abs(err_std)));
    CHECK(std::abs(direct_aug - err_aug) <= 1e-10 * (1.0 + std::abs(err_aug)));
}

TEST_CASE("event probability matches Monte-Carlo at 4-sigma") {
    L1Problem p = L1Problem::create(2, 0.5);
    int n = 3, trials = 40000;
    double p_e1 = std::pow(1.0 - p.p, n) + std::pow(p.p - p.eps, n);
    Vector probs(3);
    probs << 1.0 - p.p, p.eps, p.p - p.eps;
    int hits = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng(derive_seed(7, static_cast<std::uint64_t>(t)));
        bool all_x1 = true, all_x3 = true;
        for (int k = 0; k < n; ++k) {
            int draw = rng.categorical(probs);
            all_x1 = all_x1 && draw == 0;
            all_x3 = all_x3 && draw == 2;
        }
        if (all_x1 || all_x3) ++hits;
    }
    double sd = std::sqrt(trials * p_e1 * (1.0 - p_e1));
    CHECK(std::abs(hits - trials * p_e1) <= 4.0 * sd);
}

TEST_CASE("ratio experiment: analytic bound path and small-d Monte-Carlo") {
    auto rows = ratio_experiment({2, 3}, 2.0, 51, 60);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        L1Problem p = L1Problem::create(r.d, 0.5);
        int n = 2 * r.d;
        double expected_bound = std::pow(1.0 - p.p, n) * (p.p - p.eps) / p.eps;
        CHECK(r.analytic_bound == doctest::Approx(expected_bound).epsilon(1e-12));
        CHECK(r.mc_trials == 60);
        CHECK(r.empirical_ratio >= r.analytic_bound);
    }

    // Repeat run is bit-identical.
    auto rows2 = ratio_experiment({2, 3}, 2.0, 51, 60);
    CHECK(rows[0].empirical_ratio == rows2[0].empirical_ratio);
    CHECK(rows[1].empirical_ratio == rows2[1].empirical_ratio);

    // Large d skips the LP path.
    auto large = ratio_experiment({50}, 2.0, 51, 10);
    CHECK(large[0].mc_trials == 0);
    CHECK(large[0].empirical_ratio == 0.0);
}
