#pragma once

#include <Eigen/Dense>
#include <stdexcept>

namespace auglab {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Numerical policy shared by the linear-algebra kernel and everything above it.
struct ToleranceConfig {
    double rank_rel_tol = 1e-10;  // singular values below rank_rel_tol * sigma_max count as zero
    double eq_abs_tol = 1e-8;     // absolute tolerance for identity / residual checks
    double psd_shift = 1e-10;     // relative ridge applied to semi-definite matrices before inversion

    void validate() const {
        if (!(rank_rel_tol > 0.0) || !(rank_rel_tol < 1.0))
            throw std::invalid_argument("ToleranceConfig: rank_rel_tol must lie in (0,1)");
        if (!(eq_abs_tol > 0.0))
            throw std::invalid_argument("ToleranceConfig: eq_abs_tol must be positive");
        if (!(psd_shift > 0.0))
            throw std::invalid_argument("ToleranceConfig: psd_shift must be positive");
    }
};

void require_finite(const Matrix& a, const char* what);
void require_finite(const Vector& v, const char* what);

}  // namespace auglab
