#pragma once

#include <optional>
#include <vector>

#include "auglab/types.hpp"

namespace auglab {

struct LabeledData {
    Matrix X;  // n x d measurement matrix
    Vector y;  // n targets

    void validate() const;
};

struct ExtraData {
    Matrix X;  // m x d
    Vector y;  // m targets

    void validate() const;
};

struct PopulationModel {
    Vector theta_star;  // true parameter
    Matrix sigma;       // d x d population covariance, symmetric PSD

    void validate() const;
};

/// Finite support of the input distribution with per-point perturbation sets.
/// An empty perturbation set means T(x) = {x}.
struct DiscreteDomain {
    std::vector<Vector> points;
    std::vector<double> probs;
    std::vector<std::vector<int>> perturbation_sets;

    void validate() const;
};

enum class NormKind { euclidean, m_norm, l1 };

struct Estimator {
    Vector theta;
    NormKind norm_kind = NormKind::euclidean;
    double fit_residual = 0.0;  // ||A theta - b|| on the training system
    double achieved_norm = 0.0; // norm of theta in the estimator's own norm
};

/// Stack standard and optional extra rows into one system.
std::pair<Matrix, Vector> stack_systems(const LabeledData& data, const std::optional<ExtraData>& extra);

/// Minimum Euclidean norm interpolant of the (stacked) system. Throws
/// InfeasibleError when the system is inconsistent, which signals that the
/// extra targets were not consistent perturbations.
Estimator min_norm_fit(const LabeledData& data, const std::optional<ExtraData>& extra = std::nullopt,
                       const ToleranceConfig& tol = {});

/// Minimum M-norm interpolant (argmin theta'M theta s.t. interpolation),
/// computed by rotating covariates by M^{-1/2}, fitting min-norm, and mapping
/// back. M must be symmetric PD or PSD (ridge-shifted per tolerance policy).
Estimator m_norm_fit(const LabeledData& data, const std::optional<ExtraData>& extra, const Matrix& m,
                     const ToleranceConfig& tol = {});

/// Minimum l1-norm interpolant via LP (Bland's rule vertex).
Estimator l1_fit(const LabeledData& data, const std::optional<ExtraData>& extra = std::nullopt);

/// (theta - theta*)' Sigma (theta - theta*).
double standard_error(const Vector& theta, const PopulationModel& model);

/// Expected worst-case squared error over the finite perturbation sets:
/// sum_i p_i max_{x' in T(x_i)} (x'@theta - x_i@theta*)^2.
double robust_error_discrete(const Vector& theta, const PopulationModel& model, const DiscreteDomain& domain);

/// Standard error restricted to the discrete domain (identity perturbations).
double standard_error_discrete(const Vector& theta, const PopulationModel& model, const DiscreteDomain& domain);

}  // namespace auglab
