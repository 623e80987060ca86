#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <set>

#include "auglab/linalg.hpp"
#include "auglab/rng.hpp"
#include "auglab/spline.hpp"

using namespace auglab;

namespace {

// Adaptive Simpson integration, independent of the Gauss rule used by
// penalty_matrix.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                        double fm, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, a, m, fa, fm, flm, tol / 2, depth - 1) +
           adaptive_simpson(f, m, b, fm, fb, frm, tol / 2, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
    double m = 0.5 * (a + b);
    return adaptive_simpson(f, a, b, f(a), f(b), f(m), tol, 24);
}

}  // namespace

TEST_CASE("partition of unity, nonnegativity and local support") {
    StaircaseProblem problem = StaircaseProblem::create(6);
    Rng rng(3);
    for (int i = 0; i < 10000; ++i) {
        double t = rng.uniform(problem.basis.domain_min(), problem.basis.domain_max());
        Vector f = problem.basis.features(t);
        CHECK(f.minCoeff() >= -1e-14);
        CHECK(f.sum() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((f.array() > 1e-14).count() <= 4);
    }
    CHECK_THROWS_AS(problem.basis.features(problem.basis.domain_max() + 0.5), std::domain_error);
}

TEST_CASE("at most three basis functions are active at a simple interior knot") {
    StaircaseProblem problem = StaircaseProblem::create(6);
    Vector f = problem.basis.features(2.0);  // interior breakpoint
    CHECK((f.array() > 1e-12).count() <= 3);
}

TEST_CASE("Greville coefficients reproduce the identity function") {
    StaircaseProblem problem = StaircaseProblem::create(5);
    Vector greville = problem.basis.greville_abscissae();
    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        double t = rng.uniform(problem.basis.domain_min(), problem.basis.domain_max());
        CHECK(problem.basis.features(t).dot(greville) == doctest::Approx(t).epsilon(1e-10));
    }
}

TEST_CASE("derivative features agree with finite differences") {
    StaircaseProblem problem = StaircaseProblem::create(4);
    Rng rng(7);
    for (int i = 0; i < 100; ++i) {
        double t = rng.uniform(problem.basis.domain_min() + 0.01, problem.basis.domain_max() - 0.01);
        double h = 1e-6;
        Vector up = problem.basis.features(t + h);
        Vector dn = problem.basis.features(t - h);
        Vector d1 = problem.basis.derivative_features(t, 1);
        CHECK((0.5 * (up - dn) / h - d1).cwiseAbs().maxCoeff() <= 1e-5);
        Vector mid = problem.basis.features(t);
        Vector d2 = problem.basis.derivative_features(t, 2);
        CHECK(((up - 2 * mid + dn) / (h * h) - d2).cwiseAbs().maxCoeff() <= 1e-3);
    }
}

TEST_CASE("penalty matrix is a PSD Gram matrix of second derivatives") {
    StaircaseProblem problem = StaircaseProblem::create(5);
    const Matrix& m = problem.penalty;
    CHECK((m - m.transpose()).cwiseAbs().maxCoeff() == 0.0);  // symmetrized exactly
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10);

    // Exactly the linear functions carry no curvature energy.
    int near_zero = 0;
    for (Index i = 0; i < eig.eigenvalues().size(); ++i)
        if (eig.eigenvalues()[i] <= 1e-10 * eig.eigenvalues().maxCoeff()) ++near_zero;
    CHECK(near_zero == 2);

    // A linear function has no curvature energy: evaluate the functional by
    // quadrature of (f'')^2, which avoids the cancellation floor of the
    // quadratic form at |M| ~ 1e3 scales.
    Vector linear_coeffs = 2.0 * problem.basis.greville_abscissae() + Vector::Ones(problem.dim());
    const auto& knots = problem.basis.knots();
    double energy = 0.0;
    for (size_t k = 0; k + 1 < knots.size(); ++k) {
        if (knots[k + 1] <= knots[k]) continue;
        for (double frac : {0.2113248654051871, 0.7886751345948129}) {
            double t = knots[k] + (knots[k + 1] - knots[k]) * frac;
            double second = problem.basis.derivative_features(t, 2).dot(linear_coeffs);
            energy += 0.5 * (knots[k + 1] - knots[k]) * second * second;
        }
    }
    CHECK(energy <= 1e-10);
    CHECK(linear_coeffs.dot(m * linear_coeffs) <= 1e-9);  // quadratic-form rounding floor
}

TEST_CASE("penalty entries match an adaptive quadrature oracle") {
    StaircaseProblem problem = StaircaseProblem::create(4);
    const SplineBasis& basis = problem.basis;
    const auto& knots = basis.knots();
    // Spot-check a band of entries including boundary functions. Integration
    // runs span by span so localized supports cannot be skipped over.
    for (Index i = 0; i < basis.dim(); i += 3) {
        for (Index j = i; j < std::min(basis.dim(), i + 4); ++j) {
            auto integrand = [&](double t) {
                return basis.derivative_features(t, 2)[i] * basis.derivative_features(t, 2)[j];
            };
            double oracle = 0.0;
            for (size_t k = 0; k + 1 < knots.size(); ++k) {
                if (knots[k + 1] <= knots[k]) continue;
                oracle += integrate(integrand, knots[k], knots[k + 1], 1e-14);
            }
            double scale = std::max(1.0, std::abs(oracle));
            CHECK(std::abs(problem.penalty(i, j) - oracle) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("sample_staircase respects delta and the support") {
    StaircaseProblem problem = StaircaseProblem::create(6, 0.1, 0.0);
    StaircaseSample sample = sample_staircase(problem, 500, 11);
    for (double t : sample.ts) CHECK(t == std::floor(t));  // delta = 0 stays on the line

    StaircaseProblem skewed = StaircaseProblem::create(4, 0.1, 0.3);
    StaircaseSample big = sample_staircase(skewed, 100000, 13);
    std::vector<int> stair_counts(4, 0);
    int perturbed = 0;
    for (double t : big.ts) {
        int stair = static_cast<int>(std::floor(t));
        stair_counts[static_cast<size_t>(stair)] += 1;
        if (t != std::floor(t)) ++perturbed;
        bool in_domain = (t == std::floor(t)) || (t == std::floor(t) + skewed.epsilon);
        CHECK(in_domain);
    }
    // 4-sigma multinomial bounds around the expected frequencies.
    for (int i = 0; i < 4; ++i) {
        double expected = 100000.0 * 0.25;
        double sd = std::sqrt(100000.0 * 0.25 * 0.75);
        CHECK(std::abs(stair_counts[static_cast<size_t>(i)] - expected) <= 4.0 * sd);
    }
    double p_sd = std::sqrt(100000.0 * 0.3 * 0.7);
    CHECK(std::abs(perturbed - 30000.0) <= 4.0 * p_sd);
}

TEST_CASE("sample_augmentations keeps targets and stays inside the pair set") {
    StaircaseProblem problem = StaircaseProblem::create(5, 0.1, 0.5);
    StaircaseSample sample = sample_staircase(problem, 4000, 17);
    AugmentationSample aug = sample_augmentations(sample.ts, problem, 19);
    int upper = 0;
    for (size_t i = 0; i < aug.ts.size(); ++i) {
        double base = std::floor(sample.ts[i]);
        CHECK(aug.data.y[static_cast<Index>(i)] == base);
        bool in_pair = aug.ts[i] == base || aug.ts[i] == base + problem.epsilon;
        CHECK(in_pair);
        if (aug.ts[i] != base) ++upper;
    }
    double sd = std::sqrt(4000.0 * 0.25);
    CHECK(std::abs(upper - 2000.0) <= 4.0 * sd);
}

TEST_CASE("two on-line points produce an exactly linear fit") {
    StaircaseProblem problem = StaircaseProblem::create(8);
    Matrix x(2, problem.dim());
    x.row(0) = problem.basis.features(0.0).transpose();
    x.row(1) = problem.basis.features(1.0).transpose();
    Vector y(2);
    y << 0, 1;
    Estimator est = spline_fit({x, y}, std::nullopt, problem);
    CHECK(est.fit_residual <= 1e-8);
    CHECK(est.theta.dot(problem.penalty * est.theta) <= 1e-8);  // no curvature energy

    // The fitted function is the identity line across the whole domain.
    for (double t : {0.05, 2.0, 4.7, 7.1}) {
        CHECK(spline_predict(problem, est.theta, t) == doctest::Approx(t).epsilon(1e-6));
    }
}

TEST_CASE("population_covariance is consistent in raw and rotated coordinates") {
    StaircaseProblem problem = StaircaseProblem::create(5, 0.1, 0.2);
    SplinePopulation pop = population_covariance(problem);

    double total = 0.0;
    for (double p : pop.domain.probs) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::SelfAdjointEigenSolver<Matrix> eig(pop.raw.sigma);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
    CHECK(linalg::numerical_rank(pop.raw.sigma) <= 2 * problem.stairs);

    // theta* interpolates the staircase on the whole domain.
    for (size_t i = 0; i < pop.ts.size(); ++i)
        CHECK(pop.domain.points[i].dot(pop.raw.theta_star) ==
              doctest::Approx(problem.f_star(pop.ts[i])).epsilon(1e-8));

    // Sigma-quadratic error equals the direct domain expectation.
    Rng rng(23);
    Vector theta = pop.raw.theta_star + rng.gaussian_vector(problem.dim());
    double via_sigma = standard_error(theta, pop.raw);
    double direct = 0.0;
    for (size_t i = 0; i < pop.ts.size(); ++i) {
        double e = pop.domain.points[i].dot(theta) - problem.f_star(pop.ts[i]);
        direct += pop.domain.probs[i] * e * e;
    }
    CHECK(via_sigma == doctest::Approx(direct).epsilon(1e-10));

    // Rotated coordinates preserve predictions.
    Vector x_rot = problem.roots.inverse_root * pop.domain.points[3];
    CHECK(x_rot.dot(pop.rotated.theta_star) ==
          doctest::Approx(pop.domain.points[3].dot(pop.raw.theta_star)).epsilon(1e-8));
}

TEST_CASE("local-global analysis of the two-point training set") {
    StaircaseProblem problem = StaircaseProblem::create(6);
    Matrix x_std(2, problem.dim());
    x_std.row(0) = problem.basis.features(0.0).transpose();
    x_std.row(1) = problem.basis.features(1.0).transpose();
    LocalGlobalProjection proj = local_global_analysis(problem, x_std);

    // Top eigenvectors are the near-linear directions already fit by the data.
    CHECK(proj.q1_residual <= 1e-8);
    CHECK(proj.q2_residual <= 1e-8);

    for (Index i = 1; i < proj.eigenvalues.size(); ++i)
        CHECK(proj.eigenvalues[i] <= proj.eigenvalues[i - 1] + 1e-12);

    CHECK((proj.projector * proj.projector.transpose() - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <=
          1e-10);

    // A local perturbation near a training point carries both components.
    Vector x_ext_rot = problem.roots.inverse_root * problem.basis.features(1.0 + problem.epsilon);
    Vector components = proj.project(x_ext_rot);
    CHECK(std::abs(components[0]) > 1e-6);
    CHECK(std::abs(components[1]) > 1e-6);
}

TEST_CASE("rst_spline satisfies the no-tradeoff guarantees on one seed") {
    StaircaseProblem problem = StaircaseProblem::create(6, 0.1, 0.1);
    SplinePopulation pop = population_covariance(problem);
    StaircaseSample sample = sample_staircase(problem, 14, 29);
    RSTSolution sol = rst_spline(sample, problem);

    double err_std = standard_error(sol.theta_int_std, pop.raw);
    double err_rst = standard_error(sol.theta, pop.raw);
    double rob_rst = robust_error_discrete(sol.theta, pop.raw, pop.domain);
    CHECK(err_rst <= err_std + 1e-10);
    CHECK(std::abs(rob_rst - err_rst) <= 1e-8);
    CHECK(sol.iterations <= problem.dim() - linalg::numerical_rank(sample.data.X));
}

TEST_CASE("sample_size_sweep is deterministic and shrinks the gap") {
    StaircaseProblem problem = StaircaseProblem::create(6, 0.1, 0.15);
    std::vector<int> n_list = {8, 60, 300};
    auto rows = sample_size_sweep(problem, n_list, 8, 31);
    auto rows2 = sample_size_sweep(problem, n_list, 8, 31);
    REQUIRE(rows.size() == 3);
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].mean_gap == rows2[i].mean_gap);  // bit-identical rerun
        CHECK(rows[i].std_gap == rows2[i].std_gap);
    }
    CHECK(rows.back().mean_gap < rows.front().mean_gap);
    CHECK(rows.back().full_support_trials == 8);
    CHECK(std::abs(rows.back().mean_gap_full_support) <= 1e-6);
}

TEST_CASE("interval ratio experiment at the smallest size") {
    auto rows = interval_ratio_experiment({4}, 0.5, 37, 60);
    REQUIRE(rows.size() == 1);
    const auto& r = rows[0];
    CHECK(r.flat_violations == 0);
    CHECK(r.ratio > 1.0);
    CHECK(r.p_e1 == doctest::Approx(std::pow(1.0 - 0.5 / 4.0, 4)).epsilon(1e-12));

    // Conditioned on >= 2 distinct stairs the standard fit is the exact line,
    // whose population error is delta * epsilon^2 / 3.
    double line_error = r.delta * 0.1 * 0.1 / 3.0;
    CHECK(r.r_std_e2_line == doctest::Approx(line_error).epsilon(0.25));
}
