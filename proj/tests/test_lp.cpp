#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "auglab/errors.hpp"
#include "auglab/linalg.hpp"
#include "auglab/lp.hpp"
#include "auglab/rng.hpp"

using namespace auglab;

TEST_CASE("one-constraint problem picks the cheapest coordinate") {
    Matrix a(1, 2);
    a << 2, 1;
    Vector b(1);
    b << 2;
    lp::LpSolution sol = lp::min_l1_interpolant(a, b);
    CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(sol.x[1]) <= 1e-10);
}

TEST_CASE("negative targets are handled through the sign split") {
    Matrix a(1, 2);
    a << 2, 1;
    Vector b(1);
    b << -2;
    lp::LpSolution sol = lp::min_l1_interpolant(a, b);
    CHECK(sol.objective == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(sol.x[0] == doctest::Approx(-1.0).epsilon(1e-10));
}

TEST_CASE("identity system reproduces the targets") {
    Matrix a = Matrix::Identity(4, 4);
    Vector b(4);
    b << 1, -2, 0, 3;
    lp::LpSolution sol = lp::min_l1_interpolant(a, b);
    CHECK((sol.x - b).norm() <= 1e-10);
}

TEST_CASE("infeasible constraints raise") {
    Matrix a(2, 1);
    a << 1, 1;
    Vector b(2);
    b << 1, 2;
    CHECK_THROWS_AS(lp::min_l1_interpolant(a, b), InfeasibleError);
}

TEST_CASE("redundant consistent rows are tolerated") {
    Matrix a(2, 2);
    a << 1, 2, 2, 4;
    Vector b(2);
    b << 3, 6;
    lp::LpSolution sol = lp::min_l1_interpolant(a, b);
    CHECK((a * sol.x - b).norm() <= 1e-9);
    CHECK(sol.objective == doctest::Approx(1.5).epsilon(1e-9));  // mass on the coefficient-2 column
}

TEST_CASE("LP optimum matches subset enumeration at d <= 6") {
    for (int trial = 0; trial < 60; ++trial) {
        Rng rng(derive_seed(101, static_cast<std::uint64_t>(trial)));
        int d = rng.uniform_int(2, 6);
        int n = rng.uniform_int(1, d);
        Matrix a = rng.gaussian_matrix(n, d);
        Vector b = a * rng.gaussian_vector(d);
        lp::LpSolution sol = lp::min_l1_interpolant(a, b);
        CHECK((a * sol.x - b).norm() <= 1e-8 * (1.0 + b.norm()));
        double oracle = lp::min_l1_norm_by_enumeration(a, b);
        CHECK(sol.objective == doctest::Approx(oracle).epsilon(1e-7));
    }
}

TEST_CASE("solver is deterministic") {
    Rng rng(202);
    Matrix a = rng.gaussian_matrix(3, 8);
    Vector b = a * rng.gaussian_vector(8);
    lp::LpSolution first = lp::min_l1_interpolant(a, b);
    lp::LpSolution second = lp::min_l1_interpolant(a, b);
    CHECK((first.x - second.x).norm() == 0.0);
    CHECK(first.iterations == second.iterations);
}
