#include "auglab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "auglab/errors.hpp"

namespace auglab {

void require_finite(const Matrix& a, const char* what) {
    if (!a.allFinite()) throw std::invalid_argument(std::string(what) + ": entries must be finite");
}

void require_finite(const Vector& v, const char* what) {
    if (!v.allFinite()) throw std::invalid_argument(std::string(what) + ": entries must be finite");
}

namespace linalg {

namespace {

struct ThinSvd {
    Matrix u;       // m x r
    Vector sigma;   // r retained singular values
    Matrix v;       // n x r
    Index rank;
};

ThinSvd svd_with_cutoff(const Matrix& a, const ToleranceConfig& tol) {
    tol.validate();
    require_finite(a, "svd input");
    if (a.rows() == 0 || a.cols() == 0) {
        ThinSvd empty;
        empty.u = Matrix(a.rows(), 0);
        empty.sigma = Vector(0);
        empty.v = Matrix(a.cols(), 0);
        empty.rank = 0;
        return empty;
    }
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw NumericFailure("SVD did not converge");
    const Vector& sv = svd.singularValues();
    double cutoff = sv.size() > 0 ? tol.rank_rel_tol * sv[0] : 0.0;
    Index r = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv[i] > cutoff) ++r;
    ThinSvd out;
    out.u = svd.matrixU().leftCols(r);
    out.sigma = sv.head(r);
    out.v = svd.matrixV().leftCols(r);
    out.rank = r;
    return out;
}

}  // namespace

Matrix pinv(const Matrix& a, const ToleranceConfig& tol) {
    ThinSvd f = svd_with_cutoff(a, tol);
    if (f.rank == 0) return Matrix::Zero(a.cols(), a.rows());
    return f.v * f.sigma.cwiseInverse().asDiagonal() * f.u.transpose();
}

Index numerical_rank(const Matrix& a, const ToleranceConfig& tol) {
    return svd_with_cutoff(a, tol).rank;
}

Matrix null_projector(const Matrix& a, const ToleranceConfig& tol) {
    // I - V V' over the retained right singular vectors; algebraically
    // identical to I - pinv(A'A) A'A but better conditioned.
    ThinSvd f = svd_with_cutoff(a, tol);
    Matrix p = Matrix::Identity(a.cols(), a.cols());
    if (f.rank > 0) p -= f.v * f.v.transpose();
    return p;
}

Matrix row_projector(const Matrix& a, const ToleranceConfig& tol) {
    ThinSvd f = svd_with_cutoff(a, tol);
    if (f.rank == 0) return Matrix::Zero(a.cols(), a.cols());
    return f.v * f.v.transpose();
}

Matrix nullspace_basis(const Matrix& a, const ToleranceConfig& tol) {
    tol.validate();
    require_finite(a, "nullspace_basis input");
    if (a.rows() == 0 || a.cols() == 0) return Matrix::Identity(a.cols(), a.cols());
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
    if (svd.info() != Eigen::Success) throw NumericFailure("SVD did not converge");
    const Vector& sv = svd.singularValues();
    double cutoff = sv.size() > 0 ? tol.rank_rel_tol * sv[0] : 0.0;
    Index r = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv[i] > cutoff) ++r;
    return svd.matrixV().rightCols(a.cols() - r);
}

Matrix rowspace_basis(const Matrix& a, const ToleranceConfig& tol) {
    ThinSvd f = svd_with_cutoff(a, tol);
    return f.v;
}

SymRootInv sym_root_inv(const Matrix& m, const ToleranceConfig& tol) {
    tol.validate();
    require_finite(m, "sym_root_inv input");
    if (m.rows() != m.cols()) throw std::invalid_argument("sym_root_inv: matrix must be square");
    double scale = m.cwiseAbs().maxCoeff();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol.eq_abs_tol * (1.0 + scale))
        throw std::invalid_argument("sym_root_inv: matrix must be symmetric");

    Eigen::SelfAdjointEigenSolver<Matrix> eig(Matrix(0.5 * (m + m.transpose())));
    if (eig.info() != Eigen::Success) throw NumericFailure("eigendecomposition failed");
    Vector lam = eig.eigenvalues();
    double lam_max = lam.maxCoeff();
    double lam_min = lam.minCoeff();
    if (lam_min < -tol.eq_abs_tol * (1.0 + std::abs(lam_max)))
        throw std::invalid_argument("sym_root_inv: matrix has a negative eigenvalue");
    if (lam_max <= 0.0) throw NumericFailure("sym_root_inv: matrix is numerically zero");

    SymRootInv out;
    double shift_scale = tol.psd_shift * lam_max;
    if (lam_min < shift_scale) {
        out.shifted = true;
        out.shift = shift_scale;
        lam.array() += shift_scale;
    }
    Vector inv_sqrt = lam.array().sqrt().inverse();
    Vector sqrtv = lam.array().sqrt();
    const Matrix& q = eig.eigenvectors();
    out.inverse_root = q * inv_sqrt.asDiagonal() * q.transpose();
    out.root = q * sqrtv.asDiagonal() * q.transpose();
    return out;
}

Vector solve_constrained_quadratic(const Matrix& s, const Vector& theta0, const Matrix& a,
                                   const Vector& b, const ToleranceConfig& tol) {
    tol.validate();
    require_finite(s, "quadratic weight");
    require_finite(theta0, "theta0");
    require_finite(a, "constraint matrix");
    require_finite(b, "constraint targets");
    const Index d = a.cols();
    if (s.rows() != d || s.cols() != d) throw std::invalid_argument("solve_constrained_quadratic: S dimension mismatch");
    if (theta0.size() != d) throw std::invalid_argument("solve_constrained_quadratic: theta0 dimension mismatch");
    if (a.rows() != b.size()) throw std::invalid_argument("solve_constrained_quadratic: A/b dimension mismatch");

    // Minimum-norm particular solution; its residual decides feasibility.
    Vector theta_p = pinv(a, tol) * b;
    double resid = a.rows() > 0 ? (a * theta_p - b).norm() : 0.0;
    if (resid > tol.eq_abs_tol * (1.0 + b.norm()))
        throw InfeasibleError("solve_constrained_quadratic: constraints are inconsistent");

    Matrix n = nullspace_basis(a, tol);  // d x k, orthonormal columns
    if (n.cols() == 0) return theta_p;

    // Objective over the feasible parametrization theta = theta_p + N z:
    //   z' (N'SN) z + 2 (theta_p - theta0)' S N z + const.
    Vector delta = theta_p - theta0;
    Matrix h = n.transpose() * s * n;
    h = 0.5 * (h + h.transpose());
    Vector g = n.transpose() * (s * delta);
    Vector z = -pinv(h, tol) * g;

    // Among optimal z (h singular), pick the one minimizing ||theta - theta0||.
    Matrix hnull = nullspace_basis(h, tol);
    if (hnull.cols() > 0) {
        Vector w = -hnull.transpose() * (n.transpose() * delta + z);
        z += hnull * w;
    }
    return theta_p + n * z;
}

}  // namespace linalg
}  // namespace auglab
