#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "auglab/errors.hpp"
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

bool approx_equal(const Matrix& a, const Matrix& b, double tol = 1e-10) {
    return (a - b).cwiseAbs().maxCoeff() <= tol;
}

}  // namespace

TEST_CASE("pinv identity and diagonal") {
    CHECK(approx_equal(linalg::pinv(Matrix::Identity(2, 2)), Matrix::Identity(2, 2)));
    CHECK(approx_equal(linalg::pinv(diag({2.0, 0.0})), diag({0.5, 0.0})));
}

TEST_CASE("pinv residual identity on a random 3x2 system") {
    Rng rng(7);
    Matrix a = rng.gaussian_matrix(3, 2);
    Matrix api = linalg::pinv(a);
    CHECK((a * api * a - a).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("pinv satisfies all four Moore-Penrose identities on random matrices") {
    for (int trial = 0; trial < 50; ++trial) {
        Rng rng(derive_seed(11, static_cast<std::uint64_t>(trial)));
        int d = rng.uniform_int(1, 20);
        int n = rng.uniform_int(1, 20);
        Matrix a = rng.gaussian_matrix(n, d);
        if (trial % 3 == 0 && d > 1) a.col(d - 1) = a.col(0);  // force rank deficiency
        Matrix p = linalg::pinv(a);
        CHECK((a * p * a - a).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK((p * a * p - p).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(((a * p).transpose() - a * p).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK(((p * a).transpose() - p * a).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("pinv rejects non-finite input") {
    Matrix a(1, 2);
    a << 1.0, std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(linalg::pinv(a), std::invalid_argument);
}

TEST_CASE("null_projector on known geometries") {
    Matrix a(1, 3);
    a << 0, 0, 1;
    CHECK(approx_equal(linalg::null_projector(a), diag({1.0, 1.0, 0.0})));

    CHECK(approx_equal(linalg::null_projector(Matrix::Identity(3, 3)), Matrix::Zero(3, 3)));

    Matrix b(1, 3);
    b << 1, 1, 0;
    Vector v(3);
    v << 1, 1, 0;
    Matrix expected = Matrix::Identity(3, 3) - 0.5 * v * v.transpose();
    CHECK(approx_equal(linalg::null_projector(b), expected));
}

TEST_CASE("null_projector is symmetric idempotent and annihilates rows") {
    for (int trial = 0; trial < 30; ++trial) {
        Rng rng(derive_seed(23, static_cast<std::uint64_t>(trial)));
        int d = rng.uniform_int(2, 12);
        int n = rng.uniform_int(1, d);
        Matrix a = rng.gaussian_matrix(n, d);
        Matrix p = linalg::null_projector(a);
        CHECK((p * p - p).cwiseAbs().maxCoeff() <= 1e-9);
        CHECK((p - p.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((p * a.transpose()).cwiseAbs().maxCoeff() <= 1e-9);
        // Projector eigenvalues are 0/1, so the trace counts the rank.
        CHECK(std::lround(p.trace()) == d - linalg::numerical_rank(a));

        // P fixes vectors built orthogonal to the rows of A.
        Vector x = linalg::nullspace_basis(a) * rng.gaussian_vector(d - linalg::numerical_rank(a));
        CHECK((p * x - x).norm() <= 1e-9 * (1.0 + x.norm()));
    }
}

TEST_CASE("projector nesting: augmenting rows shrinks the nullspace") {
    for (int trial = 0; trial < 30; ++trial) {
        Rng rng(derive_seed(37, static_cast<std::uint64_t>(trial)));
        int d = rng.uniform_int(2, 12);
        Matrix x_std = rng.gaussian_matrix(rng.uniform_int(1, d), d);
        Matrix x_ext = rng.gaussian_matrix(rng.uniform_int(1, d), d);
        Matrix stacked(x_std.rows() + x_ext.rows(), d);
        stacked << x_std, x_ext;
        Matrix p_std = linalg::null_projector(x_std);
        Matrix p_aug = linalg::null_projector(stacked);
        CHECK((p_std * p_aug - p_aug).cwiseAbs().maxCoeff() <= 1e-9);
    }
}

TEST_CASE("sym_root_inv identity and diagonal") {
    auto r = linalg::sym_root_inv(Matrix::Identity(3, 3));
    CHECK(approx_equal(r.inverse_root, Matrix::Identity(3, 3)));
    CHECK_FALSE(r.shifted);

    auto rd = linalg::sym_root_inv(diag({4.0, 1.0}));
    CHECK(approx_equal(rd.inverse_root, diag({0.5, 1.0})));
}

TEST_CASE("sym_root_inv shifts semi-definite input and flags it") {
    Matrix m = diag({3.0, 1.0, 0.0});
    auto r = linalg::sym_root_inv(m);
    CHECK(r.shifted);
    CHECK(r.shift > 0.0);
    Matrix shifted = m + r.shift * Matrix::Identity(3, 3);
    CHECK((r.inverse_root * shifted * r.inverse_root - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK((r.root * r.inverse_root - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("sym_root_inv rejects asymmetric and indefinite input") {
    Matrix m(2, 2);
    m << 1, 2, 0, 1;
    CHECK_THROWS_AS(linalg::sym_root_inv(m), std::invalid_argument);
    CHECK_THROWS_AS(linalg::sym_root_inv(diag({1.0, -2.0})), std::invalid_argument);
}

TEST_CASE("solve_constrained_quadratic examples") {
    // Fully constrained system returns the unique feasible point.
    Vector y(3);
    y << 2, -1, 4;
    Vector sol = linalg::solve_constrained_quadratic(Matrix::Identity(3, 3), Vector::Zero(3),
                                                     Matrix::Identity(3, 3), y);
    CHECK((sol - y).norm() <= 1e-10);

    Matrix s = diag({1.0, 4.0, 1.0});
    Matrix a(2, 3);
    a << 0, 0, 1, 1, -1, 0;
    Vector b(2);
    b << 5, 0;

    Vector theta0(3);
    theta0 << 0, 1, 5;
    Vector expected(3);
    expected << 0.8, 0.8, 5.0;
    CHECK((linalg::solve_constrained_quadratic(s, theta0, a, b) - expected).norm() <= 1e-9);

    Vector theta0b(3);
    theta0b << 0, 0, 5;
    Vector expectedb(3);
    expectedb << 0, 0, 5;
    CHECK((linalg::solve_constrained_quadratic(s, theta0b, a, b) - expectedb).norm() <= 1e-9);
}

TEST_CASE("solve_constrained_quadratic detects inconsistent constraints") {
    Matrix a(2, 2);
    a << 1, 0, 1, 0;
    Vector b(2);
    b << 1, 2;
    CHECK_THROWS_AS(
        linalg::solve_constrained_quadratic(Matrix::Identity(2, 2), Vector::Zero(2), a, b),
        InfeasibleError);
}

TEST_CASE("solve_constrained_quadratic output is feasible and KKT-stationary") {
    for (int trial = 0; trial < 40; ++trial) {
        Rng rng(derive_seed(51, static_cast<std::uint64_t>(trial)));
        int d = rng.uniform_int(2, 10);
        int k = rng.uniform_int(1, d);
        Matrix a = rng.gaussian_matrix(k, d);
        Vector b = a * rng.gaussian_vector(d);  // consistent by construction
        Matrix s = trial % 2 == 0 ? rng.psd_matrix(d) : Matrix(rng.psd_matrix(d) * 0.0);  // singular case too
        if (trial % 3 == 0) {
            Matrix g = rng.gaussian_matrix(rng.uniform_int(1, d - 1 > 0 ? d - 1 : 1), d);
            s = g.transpose() * g;  // low-rank PSD
        }
        Vector theta0 = rng.gaussian_vector(d);
        Vector sol = linalg::solve_constrained_quadratic(s, theta0, a, b);
        CHECK((a * sol - b).norm() <= 1e-8 * (1.0 + b.norm()));

        // Gradient lies in the row space of A.
        Vector grad = 2.0 * s * (sol - theta0);
        Matrix p_null = linalg::null_projector(a);
        CHECK((p_null * grad).norm() <= 1e-8 * (1.0 + grad.norm()));
    }
}

TEST_CASE("solve_constrained_quadratic tie-break minimizes distance to theta0") {
    // S = 0 makes every feasible point optimal; the returned point must be the
    // closest feasible point to theta0.
    Matrix a(1, 3);
    a << 1, 0, 0;
    Vector b(1);
    b << 2;
    Vector theta0(3);
    theta0 << 0, 3, -1;
    Vector sol = linalg::solve_constrained_quadratic(Matrix::Zero(3, 3), theta0, a, b);
    Vector expected(3);
    expected << 2, 3, -1;
    CHECK((sol - expected).norm() <= 1e-10);
}
