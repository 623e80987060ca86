#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "auglab/estimators.hpp"
#include "auglab/types.hpp"

namespace auglab {

/// One noiseless augmentation experiment: standard data, extra data, the true
/// parameter and the population covariance.
struct RegressionInstance {
    LabeledData standard;
    ExtraData extra;
    Vector theta_star;
    Matrix sigma;

    /// Builds targets from theta_star (noiseless model y = X theta*).
    static RegressionInstance noiseless(Matrix x_std, Matrix x_ext, Vector theta_star, Matrix sigma);
};

/// Exact error-difference decomposition:
///   L_std(std) - L_std(aug) = v'Sv + 2 w'Sv,
/// with v the nullspace component recovered by augmentation and w the
/// component left unconstrained by both fits. direct_diff cross-checks the
/// identity through the actual estimators.
struct TradeoffDecomposition {
    Vector v;              // proj(Null(X_std)) * proj(Row([X_std;X_ext])) theta*
    Vector w;              // proj(Null([X_std;X_ext])) theta*
    double predicted_diff; // v'Sv + 2 w'Sv
    double direct_diff;    // L_std(theta_std) - L_std(theta_aug)
};

TradeoffDecomposition decompose(const Vector& theta_star, const Matrix& x_std, const Matrix& x_ext,
                                const Matrix& sigma, const ToleranceConfig& tol = {});

struct SafeConditionReport {
    bool identity_cov = false;         // sigma = gamma I for some gamma > 0
    bool aug_spans_space = false;      // [X_std; X_ext] has full column rank
    bool single_eigvec = false;        // one extra row whose nullspace projection is an eigenvector of sigma
    bool well_conditioned_case = false; // cond(sigma) <= 2 and projected theta* an eigenvector
    std::optional<double> single_point_value;  // left side of the single-augmentation condition

    bool any() const { return identity_cov || aug_spans_space || single_eigvec || well_conditioned_case; }
};

SafeConditionReport check_safe_conditions(const RegressionInstance& instance, const ToleranceConfig& tol = {});

/// Left-hand side of the single-augmentation safety condition,
///   (xb'S xb)/(xb'xb) - 2 (xb'S tb)/(xb'tb),  xb = P x_ext, tb = P theta*,
/// with P the nullspace projector of X_std. Value <= 0 means the augmentation
/// cannot increase standard error; its sign matches the sign of the measured
/// error change. Throws DegenerateDirectionError when a denominator vanishes.
double single_point_condition(const Vector& x_ext, const Matrix& x_std, const Matrix& sigma,
                              const Vector& theta_star, const ToleranceConfig& tol = {});

/// Closed form for the canonical 3D instance (X_std = e3', X_ext = (e1+e2)',
/// sigma = diag(l1, l2, l3)): augmentation increases standard error iff
/// l2 (t1 - 3 t2) > l1 (3 t1 - t2). Valid sign predictor for t1 + t2 > 0.
bool condition_3d(const Vector& theta_star, double lambda1, double lambda2);

/// Unit vectors (w, v) with w'v = 0 and w'Sv != 0, built on the eigen-pair of
/// sigma with the largest eigenvalue spread. Throws ConstructionImpossibleError
/// when all nonzero eigenvalues coincide.
std::pair<Vector, Vector> find_wv_pair(const Matrix& sigma, const ToleranceConfig& tol = {});

struct AdversarialConstruction {
    Vector theta_star;
    double target_increase = 0.0;                 // requested c
    double norm_budget = 0.0;                     // requested c1 = |theta_aug|^2 - |theta_std|^2
    double achieved_increase = 0.0;               // measured L_std(aug) - L_std(std)
    std::pair<double, double> norm_gap_bounds{0.0, 0.0};  // lower bounds for the aug gap and the std gap
    double beta1 = 0.0;
    double beta2 = 0.0;
};

/// Builds theta* = theta_std + V zeta + W xi achieving exactly c error increase
/// with |zeta|^2 = c1, where V spans the nullspace directions recovered by the
/// augmentation and W spans the directions left free by both fits. Throws
/// ConstructionImpossibleError when W'SV = 0 (every augmentation safe).
AdversarialConstruction construct_adversarial_theta(const Matrix& x_std, const Matrix& x_ext,
                                                    const Matrix& sigma, double c, double c1,
                                                    const ToleranceConfig& tol = {});

/// Verifies |theta*|^2 - |theta_std|^2 against the c1-minimized lower bound
/// 2 sqrt(beta1 beta2 c^2).
bool norm_gap_check(const AdversarialConstruction& construction, const Matrix& x_std, const Matrix& x_ext,
                    const Matrix& sigma, const ToleranceConfig& tol = {});

struct DirectionScanEntry {
    Vector direction;
    bool safe = false;
    double error_diff = 0.0;  // L_std(aug) - L_std(std)
};

/// Treats each unit direction as a single-row augmentation and reports whether
/// it is safe for the given theta*.
std::vector<DirectionScanEntry> safe_region_scan(const Matrix& x_std, const Matrix& sigma,
                                                 const Vector& theta_star,
                                                 const std::vector<Vector>& directions,
                                                 const ToleranceConfig& tol = {});

}  // namespace auglab
