#include "auglab/variance.hpp"

#include <vector>

#include "auglab/errors.hpp"
#include "auglab/linalg.hpp"
#include "auglab/rng.hpp"

namespace auglab {

namespace {

void check_sigma_std(const Matrix& sigma_std) {
    require_finite(sigma_std, "sigma_std");
    if (sigma_std.rows() != sigma_std.cols()) throw std::invalid_argument("sigma_std must be square");
    double scale = sigma_std.cwiseAbs().maxCoeff();
    if ((sigma_std - sigma_std.transpose()).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + scale))
        throw std::invalid_argument("sigma_std must be symmetric");
}

// Shared pieces of the closed-form pseudo-inverse of S + X'X for PSD S,
// assembled in Range(S) + Null(S) block coordinates:
//   K = (I + X S+ X')^{-1}           capacitance
//   G = S+ - S+ X' K X S+            inverse of the range block
//   Xb = X P                         null-space component of the extra rows
//   D = Xb' K Xb                     Schur complement on the null block
//   M = I - G X' Xb                  coupling correction
//   (S + X'X)+ = G + M D+ M'.
// The coupling term M collapses to the identity when the range and null
// components of X are uncorrelated, which recovers the textbook special case
// G + Xb+ (Xb+)'.
struct SumPinvParts {
    Matrix capacitance_inv;  // K
    Matrix range_inv;        // G
    Matrix x_bar;            // Xb
    Matrix schur;            // D
    Matrix coupling;         // M
    double schur_floor = 0.0;
};

// Pseudo-inverse with an absolute singular-value floor. The Schur complement
// D inherits squared round-off from the projection X P, so singular values
// below (1e-12 |X|)^2 are noise, not rank.
Matrix pinv_with_floor(const Matrix& a, double floor_value, const ToleranceConfig& tol) {
    if (a.rows() == 0 || a.cols() == 0) return Matrix::Zero(a.cols(), a.rows());
    Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Vector& sv = svd.singularValues();
    double cutoff = std::max(tol.rank_rel_tol * (sv.size() > 0 ? sv[0] : 0.0), floor_value);
    Index r = 0;
    for (Index i = 0; i < sv.size(); ++i)
        if (sv[i] > cutoff) ++r;
    if (r == 0) return Matrix::Zero(a.cols(), a.rows());
    return svd.matrixV().leftCols(r) * sv.head(r).cwiseInverse().asDiagonal() *
           svd.matrixU().leftCols(r).transpose();
}

SumPinvParts sum_pinv_parts(const Matrix& sigma_std, const Matrix& x_ext, const ToleranceConfig& tol) {
    const Index d = sigma_std.cols();
    SumPinvParts parts;
    Matrix s_pinv = linalg::pinv(sigma_std, tol);
    Matrix p_null = Matrix::Identity(d, d) - s_pinv * sigma_std;
    parts.capacitance_inv =
        (Matrix::Identity(x_ext.rows(), x_ext.rows()) + x_ext * s_pinv * x_ext.transpose()).inverse();
    parts.range_inv =
        s_pinv - s_pinv * x_ext.transpose() * parts.capacitance_inv * x_ext * s_pinv;
    parts.x_bar = x_ext * p_null;
    parts.schur = parts.x_bar.transpose() * parts.capacitance_inv * parts.x_bar;
    parts.coupling =
        Matrix::Identity(d, d) - parts.range_inv * x_ext.transpose() * parts.x_bar;
    double x_scale = 1e-12 * std::max(1.0, x_ext.norm());
    parts.schur_floor = x_scale * x_scale;
    return parts;
}

}  // namespace

Matrix kovanic_pinv_sum(const Matrix& sigma_std, const Matrix& x_ext, const ToleranceConfig& tol) {
    check_sigma_std(sigma_std);
    require_finite(x_ext, "x_ext");
    if (x_ext.cols() != sigma_std.cols()) throw std::invalid_argument("kovanic_pinv_sum: dimension mismatch");
    SumPinvParts parts = sum_pinv_parts(sigma_std, x_ext, tol);
    return parts.range_inv +
           parts.coupling * pinv_with_floor(parts.schur, parts.schur_floor, tol) * parts.coupling.transpose();
}

VarianceReport variance_difference(const Matrix& sigma, const Matrix& x_std, const Matrix& x_ext,
                                   double sigma_noise, const ToleranceConfig& tol) {
    require_finite(sigma, "sigma");
    require_finite(x_std, "x_std");
    require_finite(x_ext, "x_ext");
    if (sigma_noise < 0.0) throw std::invalid_argument("variance_difference: sigma_noise must be >= 0");
    const Index d = sigma.rows();
    if (x_std.cols() != d || x_ext.cols() != d || sigma.cols() != d)
        throw std::invalid_argument("variance_difference: dimension mismatch");

    Matrix sigma_std = x_std.transpose() * x_std;
    Matrix s_pinv = linalg::pinv(sigma_std, tol);
    SumPinvParts parts = sum_pinv_parts(sigma_std, x_ext, tol);

    VarianceReport report;
    report.sigma_noise = sigma_noise;
    // Variance increase: new directions opened up in the nullspace.
    Matrix increase =
        parts.coupling * pinv_with_floor(parts.schur, parts.schur_floor, tol) * parts.coupling.transpose();
    report.t1 = (sigma * increase).trace();
    // Variance reduction: extra rows shrinking the row-space inverse.
    Matrix reduction =
        s_pinv * x_ext.transpose() * parts.capacitance_inv * x_ext * s_pinv;
    report.t2 = (sigma * reduction).trace();
    report.predicted_diff = sigma_noise * sigma_noise * (report.t1 - report.t2);

    Matrix sigma_aug = sigma_std + x_ext.transpose() * x_ext;
    double tr_aug = (linalg::pinv(sigma_aug, tol) * sigma).trace();
    double tr_std = (s_pinv * sigma).trace();
    report.direct_diff = sigma_noise * sigma_noise * (tr_aug - tr_std);
    return report;
}

std::pair<double, double> monte_carlo_variance(const Matrix& x_std, const Matrix& x_ext, const Matrix& sigma,
                                               const Vector& theta_star, double sigma_noise, long trials,
                                               std::uint64_t seed, bool noisy_extra, const ToleranceConfig& tol) {
    if (trials < 1) throw std::invalid_argument("monte_carlo_variance: trials must be >= 1");
    if (sigma_noise == 0.0) return {0.0, 0.0};  // every refit is identical
    const Index n = x_std.rows();
    const Index m = x_ext.rows();
    Matrix stacked(n + m, x_std.cols());
    stacked << x_std, x_ext;

    // The min-norm fit is linear in the targets, so the pseudo-inverses can be
    // formed once and reused across trials.
    Matrix pinv_std = linalg::pinv(x_std, tol);
    Matrix pinv_aug = linalg::pinv(stacked, tol);
    Vector y_std_clean = x_std * theta_star;
    Vector y_ext_clean = x_ext * theta_star;

    std::vector<Vector> thetas_std, thetas_aug;
    thetas_std.reserve(static_cast<size_t>(trials));
    thetas_aug.reserve(static_cast<size_t>(trials));
    Vector mean_std = Vector::Zero(x_std.cols());
    Vector mean_aug = Vector::Zero(x_std.cols());

    for (long t = 0; t < trials; ++t) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
        Vector noise_std = sigma_noise * rng.gaussian_vector(n);
        Vector noise_ext = noisy_extra ? Vector(sigma_noise * rng.gaussian_vector(m)) : Vector(Vector::Zero(m));
        Vector b(n + m);
        b << y_std_clean + noise_std, y_ext_clean + noise_ext;

        Vector th_std = pinv_std * (y_std_clean + noise_std);
        Vector th_aug = pinv_aug * b;
        mean_std += th_std;
        mean_aug += th_aug;
        thetas_std.push_back(std::move(th_std));
        thetas_aug.push_back(std::move(th_aug));
    }
    mean_std /= static_cast<double>(trials);
    mean_aug /= static_cast<double>(trials);

    double v_std = 0.0, v_aug = 0.0;
    for (long t = 0; t < trials; ++t) {
        Vector ds = thetas_std[static_cast<size_t>(t)] - mean_std;
        Vector da = thetas_aug[static_cast<size_t>(t)] - mean_aug;
        v_std += ds.dot(sigma * ds);
        v_aug += da.dot(sigma * da);
    }
    return {v_std / static_cast<double>(trials), v_aug / static_cast<double>(trials)};
}

}  // namespace auglab
