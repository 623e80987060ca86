#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "auglab/errors.hpp"
#include "auglab/estimators.hpp"
#include "auglab/linalg.hpp"
#include "auglab/rng.hpp"

using namespace auglab;

namespace {

Matrix diag(std::initializer_list<double> vals) {
    Vector v(static_cast<Index>(vals.size()));
    Index i = 0;
    for (double x : vals) v[i++] = x;
    return Matrix(v.asDiagonal());
}

Vector vec3(double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return v;
}

LabeledData single_row(std::initializer_list<double> xs, double y) {
    Matrix x(1, static_cast<Index>(xs.size()));
    Index i = 0;
    for (double v : xs) x(0, i++) = v;
    Vector t(1);
    t << y;
    return {x, t};
}

}  // namespace

TEST_CASE("min_norm_fit on the 3D instance") {
    LabeledData data = single_row({0, 0, 1}, 5.0);
    Estimator est = min_norm_fit(data);
    CHECK((est.theta - vec3(0, 0, 5)).norm() <= 1e-10);

    LabeledData ext_row = single_row({1, 1, 0}, 1.0);
    ExtraData extra{ext_row.X, ext_row.y};
    Estimator aug = min_norm_fit(data, extra);
    CHECK((aug.theta - vec3(0.5, 0.5, 5)).norm() <= 1e-10);
}

TEST_CASE("min_norm_fit identity system returns targets") {
    Rng rng(3);
    Vector y = rng.gaussian_vector(5);
    Estimator est = min_norm_fit({Matrix::Identity(5, 5), y});
    CHECK((est.theta - y).norm() <= 1e-10);
}

TEST_CASE("min_norm_fit inconsistent stacked system raises") {
    LabeledData data = single_row({1, 0}, 1.0);
    ExtraData extra{data.X, Vector(Vector::Constant(1, 2.0))};
    CHECK_THROWS_AS(min_norm_fit(data, extra), InfeasibleError);
}

TEST_CASE("m_norm_fit with identity M reduces to min_norm_fit") {
    Rng rng(5);
    Matrix x = rng.gaussian_matrix(2, 4);
    Vector y = x * rng.gaussian_vector(4);
    Estimator euclid = min_norm_fit({x, y});
    Estimator mfit = m_norm_fit({x, y}, std::nullopt, Matrix::Identity(4, 4));
    CHECK((euclid.theta - mfit.theta).norm() <= 1e-8);
}

TEST_CASE("m_norm_fit skews the interpolant away from expensive coordinates") {
    Estimator est = m_norm_fit(single_row({1, 1}, 1.0), std::nullopt, diag({100.0, 1.0}));
    CHECK(est.theta[0] == doctest::Approx(1.0 / 101.0).epsilon(1e-8));
    CHECK(est.theta[1] == doctest::Approx(100.0 / 101.0).epsilon(1e-8));
}

TEST_CASE("l1_fit picks the sparse vertex") {
    Estimator est = l1_fit(single_row({2, 1}, 2.0));
    CHECK(est.theta[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(est.theta[1]) <= 1e-9);
    CHECK(est.achieved_norm == doctest::Approx(1.0).epsilon(1e-9));

    Rng rng(7);
    Vector y = rng.gaussian_vector(4);
    Estimator ident = l1_fit({Matrix::Identity(4, 4), y});
    CHECK((ident.theta - y).norm() <= 1e-9);
}

TEST_CASE("standard_error closed forms") {
    PopulationModel model{vec3(1, 0, 5), diag({1.0, 4.0, 1.0})};
    CHECK(standard_error(model.theta_star, model) == 0.0);
    CHECK(standard_error(vec3(0, 0, 5), model) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(standard_error(vec3(0.5, 0.5, 5), model) == doctest::Approx(1.25).epsilon(1e-12));
    CHECK_THROWS_AS(standard_error(Vector::Zero(2), model), std::invalid_argument);
}

TEST_CASE("robust_error_discrete enumerates perturbation sets") {
    // Consistent perturbation of e3: x' = (-5, 3, 2) has x'.theta* = e3.theta* = 5,
    // so the worst case is max((5-5)^2, (10-5)^2) = 25.
    PopulationModel model{vec3(1, 0, 5), diag({1.0, 4.0, 1.0})};
    DiscreteDomain domain;
    domain.points = {vec3(0, 0, 1), vec3(-5, 3, 2)};
    domain.probs = {1.0, 0.0};
    domain.perturbation_sets = {{0, 1}, {1}};
    CHECK(robust_error_discrete(vec3(0, 0, 5), model, domain) == doctest::Approx(25.0).epsilon(1e-12));

    // The perturbed input is always scored against the original input's
    // target, also when a caller passes an inconsistent perturbation.
    DiscreteDomain inconsistent = domain;
    inconsistent.points[1] = vec3(1, 1, 0);  // x'.theta* = 1 != 5
    CHECK(robust_error_discrete(vec3(0, 0, 5), model, inconsistent) ==
          doctest::Approx(25.0).epsilon(1e-12));

    // Identity perturbations reduce to the discrete-domain standard error.
    DiscreteDomain ident = domain;
    ident.perturbation_sets = {{0}, {1}};
    CHECK(robust_error_discrete(vec3(0, 0, 5), model, ident) ==
          doctest::Approx(standard_error_discrete(vec3(0, 0, 5), model, ident)).epsilon(1e-12));

    // Empty set means T(x) = {x}.
    DiscreteDomain empty = domain;
    empty.perturbation_sets = {{}, {}};
    CHECK(robust_error_discrete(vec3(0, 0, 5), model, empty) ==
          doctest::Approx(standard_error_discrete(vec3(0, 0, 5), model, empty)).epsilon(1e-12));
}

TEST_CASE("robust error dominates the discrete standard error when x is in T(x)") {
    for (int trial = 0; trial < 25; ++trial) {
        Rng rng(derive_seed(31, static_cast<std::uint64_t>(trial)));
        int d = rng.uniform_int(2, 6);
        int npts = rng.uniform_int(2, 5);
        DiscreteDomain domain;
        double total = 0.0;
        for (int i = 0; i < npts; ++i) {
            domain.points.push_back(rng.gaussian_vector(d));
            double p = rng.uniform() + 0.01;
            domain.probs.push_back(p);
            total += p;
        }
        for (double& p : domain.probs) p /= total;
        for (int i = 0; i < npts; ++i) {
            std::vector<int> set = {i};
            if (rng.bernoulli(0.7)) set.push_back(rng.uniform_int(0, npts - 1));
            domain.perturbation_sets.push_back(set);
        }
        PopulationModel model{rng.gaussian_vector(d), Matrix::Identity(d, d)};
        Vector theta = rng.gaussian_vector(d);
        CHECK(robust_error_discrete(theta, model, domain) >=
              standard_error_discrete(theta, model, domain) - 1e-12);
    }
}

TEST_CASE("minimum-norm fit beats every nullspace-perturbed interpolant") {
    for (int trial = 0; trial < 10; ++trial) {
        Rng rng(derive_seed(41, static_cast<std::uint64_t>(trial)));
        int d = rng.uniform_int(3, 10);
        int n = rng.uniform_int(1, d - 1);
        Matrix x = rng.gaussian_matrix(n, d);
        Vector y = x * rng.gaussian_vector(d);
        Estimator est = min_norm_fit({x, y});
        Matrix nullb = linalg::nullspace_basis(x);
        for (int k = 0; k < 100; ++k) {
            Vector alt = est.theta + nullb * rng.gaussian_vector(nullb.cols());
            CHECK((x * alt - y).norm() <= 1e-8 * (1.0 + y.norm()));
            CHECK(est.theta.norm() <= alt.norm() + 1e-12);
        }
    }
}

TEST_CASE("augmentation cannot shrink the minimum norm; fits are exact on the span") {
    for (int trial = 0; trial < 30; ++trial) {
        Rng rng(derive_seed(43, static_cast<std::uint64_t>(trial)));
        int d = rng.uniform_int(2, 10);
        Vector theta_star = rng.gaussian_vector(d);
        Matrix x_std = rng.gaussian_matrix(rng.uniform_int(1, d), d);
        Matrix x_ext = rng.gaussian_matrix(rng.uniform_int(1, d), d);
        LabeledData data{x_std, Vector(x_std * theta_star)};
        ExtraData extra{x_ext, Vector(x_ext * theta_star)};
        Estimator est_std = min_norm_fit(data);
        Estimator est_aug = min_norm_fit(data, extra);
        CHECK(est_aug.theta.norm() >= est_std.theta.norm() - 1e-10);
        CHECK((x_std * est_std.theta - x_std * theta_star).norm() <= 1e-8);
        CHECK((x_std * est_aug.theta - x_std * theta_star).norm() <= 1e-8);
        CHECK((x_ext * est_aug.theta - x_ext * theta_star).norm() <= 1e-8);
    }
}

TEST_CASE("l1 objective is at most the l1 norm of the min-l2 interpolant") {
    for (int trial = 0; trial < 30; ++trial) {
        Rng rng(derive_seed(47, static_cast<std::uint64_t>(trial)));
        int d = rng.uniform_int(2, 8);
        Matrix x = rng.gaussian_matrix(rng.uniform_int(1, d), d);
        Vector y = x * rng.gaussian_vector(d);
        Estimator l1 = l1_fit({x, y});
        Estimator l2 = min_norm_fit({x, y});
        CHECK(l1.achieved_norm <= l2.theta.lpNorm<1>() + 1e-8);
    }
}

TEST_CASE("domain validation rejects malformed inputs") {
    DiscreteDomain domain;
    domain.points = {vec3(1, 0, 0)};
    domain.probs = {0.5};
    CHECK_THROWS_AS(domain.validate(), std::invalid_argument);  // probs do not sum to 1
    domain.probs = {1.0};
    domain.perturbation_sets = {{3}};
    CHECK_THROWS_AS(domain.validate(), std::invalid_argument);  // index out of range
}
