#pragma once

#include "auglab/types.hpp"

namespace auglab::linalg {

/// Moore-Penrose pseudo-inverse via SVD. Singular values below
/// tol.rank_rel_tol * sigma_max are treated as zero.
Matrix pinv(const Matrix& a, const ToleranceConfig& tol = {});

/// Numerical rank under the same cutoff rule as pinv.
Index numerical_rank(const Matrix& a, const ToleranceConfig& tol = {});

/// Orthogonal projector onto Null(A): P = I - S+ S with S = A'A.
/// Symmetric, idempotent, P A' = 0, rank(P) = cols - rank(A).
Matrix null_projector(const Matrix& a, const ToleranceConfig& tol = {});

/// Orthogonal projector onto the row space of A (complement of null_projector).
Matrix row_projector(const Matrix& a, const ToleranceConfig& tol = {});

/// Orthonormal basis of Null(A), returned as columns (d x k).
Matrix nullspace_basis(const Matrix& a, const ToleranceConfig& tol = {});

/// Orthonormal basis of the row space of A, returned as columns (d x r).
Matrix rowspace_basis(const Matrix& a, const ToleranceConfig& tol = {});

struct SymRootInv {
    Matrix inverse_root;  // symmetric (M + shift I)^{-1/2}
    Matrix root;          // symmetric (M + shift I)^{1/2}
    bool shifted = false;
    double shift = 0.0;   // absolute ridge that was added, 0 when M was PD
};

/// Symmetric inverse square root. M must be symmetric with eigenvalues
/// >= -eq_abs_tol; a semi-definite M gets a relative ridge psd_shift * lambda_max
/// (flagged in the result).
SymRootInv sym_root_inv(const Matrix& m, const ToleranceConfig& tol = {});

/// argmin (theta - theta0)' S (theta - theta0) subject to A theta = b, for
/// symmetric PSD S. When S is singular on the feasible set, returns the
/// optimum closest to theta0 in Euclidean norm. Throws InfeasibleError when
/// the constraints are inconsistent.
Vector solve_constrained_quadratic(const Matrix& s, const Vector& theta0, const Matrix& a,
                                   const Vector& b, const ToleranceConfig& tol = {});

}  // namespace auglab::linalg
