#pragma once

#include <cstdint>
#include <utility>

#include "auglab/types.hpp"

namespace auglab {

/// Noisy-target variance comparison of the standard and augmented min-norm
/// estimators. predicted_diff decomposes the change into an increase term t1
/// (extra-data directions new to the nullspace) and a reduction term t2
/// (extra-data directions inside the row space).
struct VarianceReport {
    double t1 = 0.0;
    double t2 = 0.0;
    double predicted_diff = 0.0;  // sigma_noise^2 (t1 - t2)
    double direct_diff = 0.0;     // sigma_noise^2 (tr(S_aug+ S) - tr(S_std+ S))
    double sigma_noise = 0.0;
};

/// Pseudo-inverse of S_std + X_ext'X_ext via the closed-form sum identity
///   S+ - S+ X'(I + X S+ X')^{-1} X S+ + Xb+ (Xb+)'  with Xb = P_null X_ext.
Matrix kovanic_pinv_sum(const Matrix& sigma_std, const Matrix& x_ext, const ToleranceConfig& tol = {});

VarianceReport variance_difference(const Matrix& sigma, const Matrix& x_std, const Matrix& x_ext,
                                   double sigma_noise, const ToleranceConfig& tol = {});

/// Empirical (V_std, V_aug) from `trials` refits under Gaussian target noise;
/// deterministic given the seed. When noisy_extra is false the extra targets
/// stay noiseless.
std::pair<double, double> monte_carlo_variance(const Matrix& x_std, const Matrix& x_ext, const Matrix& sigma,
                                               const Vector& theta_star, double sigma_noise, long trials,
                                               std::uint64_t seed, bool noisy_extra = true,
                                               const ToleranceConfig& tol = {});

}  // namespace auglab
