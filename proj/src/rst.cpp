#include "auglab/rst.hpp"

#include <cmath>

#include "auglab/errors.hpp"
#include "auglab/linalg.hpp"

namespace auglab {

PerturbationSpan PerturbationSpan::from_rows(const Matrix& rows, const ToleranceConfig& tol,
                                             std::string description) {
    require_finite(rows, "PerturbationSpan rows");
    PerturbationSpan span;
    span.basis = linalg::rowspace_basis(rows, tol).transpose();
    span.description = std::move(description);
    return span;
}

Vector PerturbationSpan::project(const Vector& v) const {
    if (basis.rows() == 0) return Vector::Zero(v.size());
    return basis.transpose() * (basis * v);
}

RSTSolution build_constraint_basis(const Vector& theta_int_std, const PerturbationSpan& span,
                                   const Matrix& x_std, const Vector& y_std, const Matrix& sigma,
                                   const ToleranceConfig& tol) {
    require_finite(theta_int_std, "theta_int_std");
    require_finite(sigma, "sigma");
    const Index d = theta_int_std.size();
    if (x_std.cols() != d || sigma.rows() != d || sigma.cols() != d)
        throw std::invalid_argument("build_constraint_basis: dimension mismatch");
    if ((x_std * theta_int_std - y_std).norm() > tol.eq_abs_tol * (1.0 + y_std.norm()))
        throw std::invalid_argument("build_constraint_basis: theta_int_std does not interpolate the standard data");

    constexpr double kStopRel = 1e-10;

    RSTSolution sol;
    sol.theta = theta_int_std;
    sol.theta_int_std = theta_int_std;
    sol.span_basis = span.basis;
    sol.x_ext_built = Matrix(0, d);

    const Index max_iters = d;
    for (Index iter = 0; iter < max_iters + 1; ++iter) {
        Vector r = span.project(sol.theta);
        if (r.norm() <= kStopRel * std::max(1.0, sol.theta.norm())) break;

        // Over a linear span the objective (x'theta)^2 is maximized on the unit
        // ball by the normalized projection of theta.
        Vector x_new = r / r.norm();
        Matrix built(sol.x_ext_built.rows() + 1, d);
        if (sol.x_ext_built.rows() > 0) built << sol.x_ext_built, x_new.transpose();
        else built = x_new.transpose();
        sol.x_ext_built = built;
        ++sol.iterations;

        Matrix a(x_std.rows() + sol.x_ext_built.rows(), d);
        a << x_std, sol.x_ext_built;
        Vector b = Vector::Zero(a.rows());
        b.head(y_std.size()) = y_std;
        sol.theta = linalg::solve_constrained_quadratic(sigma, theta_int_std, a, b, tol);
    }
    return sol;
}

RSTSolution rst_fit(const LabeledData& data, const Matrix& sigma, const PerturbationSpan& span,
                    const std::optional<Estimator>& pseudo_labeler, const ToleranceConfig& tol) {
    data.validate();
    Vector theta_int = pseudo_labeler ? pseudo_labeler->theta : min_norm_fit(data, std::nullopt, tol).theta;
    return build_constraint_basis(theta_int, span, data.X, data.y, sigma, tol);
}

RSTGuarantees verify_rst_guarantees(const RSTSolution& solution, const PopulationModel& model,
                                    const DiscreteDomain& domain, const Matrix& x_std,
                                    const ToleranceConfig& tol) {
    domain.validate();

    // Coverage: each perturbation difference must lie in Row(X_std) + span,
    // where the theory guarantees invariance of the fitted estimator.
    Matrix combined(x_std.rows() + solution.span_basis.rows(), x_std.cols());
    if (solution.span_basis.rows() > 0) combined << x_std, solution.span_basis;
    else combined = x_std;
    Matrix row_proj = linalg::row_projector(combined, tol);
    for (size_t i = 0; i < domain.points.size(); ++i) {
        if (i >= domain.perturbation_sets.size()) break;
        for (int idx : domain.perturbation_sets[i]) {
            Vector diff = domain.points[static_cast<size_t>(idx)] - domain.points[i];
            if ((diff - row_proj * diff).norm() > tol.eq_abs_tol * (1.0 + diff.norm()))
                throw CoverageViolationError("verify_rst_guarantees: perturbation direction outside the fitted span");
        }
    }

    RSTGuarantees g;
    g.pseudo_labeler_error = standard_error(solution.theta_int_std, model);
    g.rst_standard_error = standard_error(solution.theta, model);
    g.rst_robust_error = robust_error_discrete(solution.theta, model, domain);
    return g;
}

Matrix empirical_covariance(const Matrix& unlabeled_rows) {
    require_finite(unlabeled_rows, "unlabeled rows");
    if (unlabeled_rows.rows() == 0) throw std::invalid_argument("empirical_covariance: no rows");
    return unlabeled_rows.transpose() * unlabeled_rows / static_cast<double>(unlabeled_rows.rows());
}

}  // namespace auglab
