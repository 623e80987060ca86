#pragma once

#include <optional>
#include <string>

#include "auglab/estimators.hpp"
#include "auglab/types.hpp"

namespace auglab {

/// Linear span of consistent perturbation differences x_adv - x. The stored
/// basis rows are orthonormal (deduplicated by rank at construction).
struct PerturbationSpan {
    Matrix basis;  // k x d, orthonormal rows
    std::string description;

    static PerturbationSpan from_rows(const Matrix& rows, const ToleranceConfig& tol = {},
                                      std::string description = {});
    Index dim() const { return basis.rows(); }
    /// Projection of v onto the span.
    Vector project(const Vector& v) const;
};

struct RSTSolution {
    Vector theta;          // final estimator
    Matrix x_ext_built;    // constraint rows found by the iterative builder
    int iterations = 0;
    Vector theta_int_std;  // pseudo-labeling interpolant of the standard data
    Matrix span_basis;     // orthonormal basis of the perturbation span (coverage checks)
};

/// Iterative constraint construction: repeatedly finds a span direction the
/// current iterate is not invariant to, adds it as a zero-target constraint
/// row, and re-solves the sigma-weighted projection
///   argmin (theta - theta_int)' Sigma (theta - theta_int)
///   s.t. X_std theta = y_std, X_built theta = 0.
/// Terminates within d - rank(X_std) iterations for consistent perturbations.
RSTSolution build_constraint_basis(const Vector& theta_int_std, const PerturbationSpan& span,
                                   const Matrix& x_std, const Vector& y_std, const Matrix& sigma,
                                   const ToleranceConfig& tol = {});

/// Full robust self-training pipeline: pseudo-label with the min-norm standard
/// fit (or a caller-provided interpolant), then run the constraint builder.
RSTSolution rst_fit(const LabeledData& data, const Matrix& sigma, const PerturbationSpan& span,
                    const std::optional<Estimator>& pseudo_labeler = std::nullopt,
                    const ToleranceConfig& tol = {});

struct RSTGuarantees {
    double pseudo_labeler_error = 0.0;  // L_std(theta_int_std)
    double rst_standard_error = 0.0;    // L_std(theta_rst)
    double rst_robust_error = 0.0;      // L_rob(theta_rst) on the domain
};

/// Evaluates the no-tradeoff guarantees on a discrete domain. Every domain
/// perturbation difference must lie in Row(X_std) + span; otherwise a
/// CoverageViolationError reports the mis-specified span. Pass the training
/// matrix the solution was fitted on.
RSTGuarantees verify_rst_guarantees(const RSTSolution& solution, const PopulationModel& model,
                                    const DiscreteDomain& domain, const Matrix& x_std,
                                    const ToleranceConfig& tol = {});

/// Plug-in covariance estimate (1/m) sum x x' from unlabeled rows, for the
/// finite-sample variant; guarantees are only asserted for the exact sigma.
Matrix empirical_covariance(const Matrix& unlabeled_rows);

}  // namespace auglab
