#include "auglab/tradeoff.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

#include "auglab/errors.hpp"
#include "auglab/linalg.hpp"

namespace auglab {

RegressionInstance RegressionInstance::noiseless(Matrix x_std, Matrix x_ext, Vector theta_star, Matrix sigma) {
    RegressionInstance inst;
    inst.standard.X = std::move(x_std);
    inst.standard.y = inst.standard.X * theta_star;
    inst.extra.X = std::move(x_ext);
    inst.extra.y = inst.extra.X * theta_star;
    inst.theta_star = std::move(theta_star);
    inst.sigma = std::move(sigma);
    inst.standard.validate();
    inst.extra.validate();
    return inst;
}

namespace {

Matrix stack_rows(const Matrix& top, const Matrix& bottom) {
    if (top.rows() == 0) return bottom;
    if (bottom.rows() == 0) return top;
    Matrix out(top.rows() + bottom.rows(), top.cols());
    out << top, bottom;
    return out;
}

double direct_error_difference(const Vector& theta_star, const Matrix& x_std, const Matrix& x_ext,
                               const Matrix& sigma, const ToleranceConfig& tol) {
    RegressionInstance inst = RegressionInstance::noiseless(x_std, x_ext, theta_star, sigma);
    Estimator est_std = min_norm_fit(inst.standard, std::nullopt, tol);
    Estimator est_aug = min_norm_fit(inst.standard, inst.extra, tol);
    PopulationModel model{inst.theta_star, inst.sigma};
    return standard_error(est_std.theta, model) - standard_error(est_aug.theta, model);
}

bool is_eigenvector(const Matrix& sigma, const Vector& x, const ToleranceConfig& tol) {
    double xx = x.squaredNorm();
    if (xx <= 0.0) return false;
    Vector sx = sigma * x;
    double rayleigh = x.dot(sx) / xx;
    double sigma_norm = sigma.cwiseAbs().maxCoeff();
    return (sx - rayleigh * x).norm() <= tol.eq_abs_tol * sigma_norm * x.norm();
}

}  // namespace

TradeoffDecomposition decompose(const Vector& theta_star, const Matrix& x_std, const Matrix& x_ext,
                                const Matrix& sigma, const ToleranceConfig& tol) {
    require_finite(theta_star, "theta_star");
    require_finite(sigma, "sigma");
    const Index d = theta_star.size();
    if (x_std.cols() != d || (x_ext.rows() > 0 && x_ext.cols() != d) || sigma.rows() != d || sigma.cols() != d)
        throw std::invalid_argument("decompose: dimension mismatch");

    Matrix p_std = linalg::null_projector(x_std, tol);
    Matrix p_aug = linalg::null_projector(stack_rows(x_std, x_ext), tol);

    TradeoffDecomposition out;
    out.w = p_aug * theta_star;
    out.v = p_std * (theta_star - out.w);  // P_std (I - P_aug) theta*
    out.predicted_diff = out.v.dot(sigma * out.v) + 2.0 * out.w.dot(sigma * out.v);
    out.direct_diff = direct_error_difference(theta_star, x_std, x_ext, sigma, tol);
    return out;
}

SafeConditionReport check_safe_conditions(const RegressionInstance& instance, const ToleranceConfig& tol) {
    instance.standard.validate();
    instance.extra.validate();
    require_finite(instance.sigma, "sigma");
    const Index d = instance.theta_star.size();
    const Matrix& sigma = instance.sigma;

    SafeConditionReport report;

    double gamma = sigma.trace() / static_cast<double>(d);
    if (gamma > 0.0 &&
        (sigma - gamma * Matrix::Identity(d, d)).cwiseAbs().maxCoeff() <= tol.eq_abs_tol * (1.0 + gamma))
        report.identity_cov = true;

    Matrix stacked = stack_rows(instance.standard.X, instance.extra.X);
    if (linalg::numerical_rank(stacked, tol) == d) report.aug_spans_space = true;

    if (instance.extra.X.rows() == 1) {
        Vector x_ext = instance.extra.X.row(0).transpose();
        Matrix p_std = linalg::null_projector(instance.standard.X, tol);
        Vector xb = p_std * x_ext;
        if (xb.norm() > tol.eq_abs_tol && is_eigenvector(sigma, xb, tol)) report.single_eigvec = true;
        try {
            report.single_point_value =
                single_point_condition(x_ext, instance.standard.X, sigma, instance.theta_star, tol);
        } catch (const DegenerateDirectionError&) {
            report.single_point_value = std::nullopt;
        }
    }

    Eigen::SelfAdjointEigenSolver<Matrix> eig(Matrix(0.5 * (sigma + sigma.transpose())));
    double lam_min = eig.eigenvalues().minCoeff();
    double lam_max = eig.eigenvalues().maxCoeff();
    if (lam_min > 0.0 && lam_max / lam_min <= 2.0) {
        Matrix p_std = linalg::null_projector(instance.standard.X, tol);
        Vector tb = p_std * instance.theta_star;
        if (tb.norm() <= tol.eq_abs_tol || is_eigenvector(sigma, tb, tol)) report.well_conditioned_case = true;
    }
    return report;
}

double single_point_condition(const Vector& x_ext, const Matrix& x_std, const Matrix& sigma,
                              const Vector& theta_star, const ToleranceConfig& tol) {
    Matrix p_std = linalg::null_projector(x_std, tol);
    Vector xb = p_std * x_ext;
    Vector tb = p_std * theta_star;
    double xb_sq = xb.squaredNorm();
    double xt = xb.dot(theta_star);  // equals xb . tb since the projector is idempotent
    double denom_scale = std::max(1.0, x_ext.norm() * std::max(1.0, theta_star.norm()));
    if (xb_sq <= tol.eq_abs_tol * tol.eq_abs_tol * denom_scale || std::abs(xt) <= tol.eq_abs_tol * denom_scale)
        throw DegenerateDirectionError("single_point_condition: vanishing denominator");
    return xb.dot(sigma * xb) / xb_sq - 2.0 * xb.dot(sigma * tb) / xt;
}

bool condition_3d(const Vector& theta_star, double lambda1, double lambda2) {
    if (theta_star.size() != 3) throw std::invalid_argument("condition_3d: theta_star must be 3-dimensional");
    double t1 = theta_star[0], t2 = theta_star[1];
    return lambda2 * (t1 - 3.0 * t2) > lambda1 * (3.0 * t1 - t2);
}

std::pair<Vector, Vector> find_wv_pair(const Matrix& sigma, const ToleranceConfig& tol) {
    require_finite(sigma, "sigma");
    Eigen::SelfAdjointEigenSolver<Matrix> eig(Matrix(0.5 * (sigma + sigma.transpose())));
    Vector lam = eig.eigenvalues();  // ascending
    double lam_max = lam.maxCoeff();
    if (lam_max <= 0.0) throw ConstructionImpossibleError("find_wv_pair: sigma has no nonzero eigenvalue");

    // Smallest and largest nonzero eigenvalues; the pair maximizes |w'Sv|.
    Index lo = -1, hi = lam.size() - 1;
    for (Index i = 0; i < lam.size(); ++i) {
        if (lam[i] > tol.rank_rel_tol * lam_max) {
            lo = i;
            break;
        }
    }
    if (lo < 0 || std::abs(lam[hi] - lam[lo]) <= tol.eq_abs_tol * (1.0 + lam_max))
        throw ConstructionImpossibleError("find_wv_pair: all nonzero eigenvalues equal");

    Vector ui = eig.eigenvectors().col(hi);
    Vector uj = eig.eigenvectors().col(lo);
    const double r = 1.0 / std::sqrt(2.0);
    Vector v = r * (ui + uj);
    Vector w = r * (ui - uj);  // alpha recipe with beta_i = beta_j = 1/sqrt(2)
    return {w, v};
}

AdversarialConstruction construct_adversarial_theta(const Matrix& x_std, const Matrix& x_ext,
                                                    const Matrix& sigma, double c, double c1,
                                                    const ToleranceConfig& tol) {
    if (!(c > 0.0) || !(c1 > 0.0))
        throw std::invalid_argument("construct_adversarial_theta: c and c1 must be positive");
    require_finite(sigma, "sigma");

    Matrix p_std = linalg::null_projector(x_std, tol);
    Matrix stacked = stack_rows(x_std, x_ext);
    Matrix p_aug = linalg::null_projector(stacked, tol);

    // V spans Col(P_std (I - P_aug)), W spans Col(P_aug); columns orthonormal.
    Matrix v_basis = linalg::rowspace_basis(Matrix((p_std - p_aug).transpose()), tol);
    Matrix w_basis = linalg::rowspace_basis(Matrix(p_aug.transpose()), tol);
    if (v_basis.cols() == 0 || w_basis.cols() == 0)
        throw ConstructionImpossibleError("construct_adversarial_theta: geometry leaves no (w, v) directions");

    Matrix cross = w_basis.transpose() * sigma * v_basis;  // W'SV
    Eigen::JacobiSVD<Matrix> cross_svd(cross, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double sigma_max = cross_svd.singularValues().size() > 0 ? cross_svd.singularValues()[0] : 0.0;
    double sigma_scale = sigma.cwiseAbs().maxCoeff();
    if (sigma_max <= tol.eq_abs_tol * (1.0 + sigma_scale))
        throw ConstructionImpossibleError("construct_adversarial_theta: W'SV vanishes; all augmentations safe");

    // zeta along the top right-singular direction of W'SV, scaled to |zeta|^2 = c1.
    Vector zeta = std::sqrt(c1) * cross_svd.matrixV().col(0);
    Vector x = cross * zeta;
    double c0 = zeta.dot(v_basis.transpose() * sigma * v_basis * zeta);
    Vector xi = -(c0 + c) / (2.0 * x.squaredNorm()) * x;

    // Row-space component: exercised but irrelevant to the error difference.
    Vector seed = Vector::LinSpaced(x_std.cols(), 1.0, 2.0);
    Vector rho = linalg::row_projector(x_std, tol) * seed;

    AdversarialConstruction out;
    out.theta_star = rho + v_basis * zeta + w_basis * xi;
    out.target_increase = c;
    out.norm_budget = c1;
    out.achieved_increase = -decompose(out.theta_star, x_std, x_ext, sigma, tol).direct_diff;

    Matrix v_sigma_v = v_basis.transpose() * sigma * v_basis;
    Eigen::SelfAdjointEigenSolver<Matrix> vsv(Matrix(0.5 * (v_sigma_v + v_sigma_v.transpose())));
    double lam_min_vsv = std::max(0.0, vsv.eigenvalues().minCoeff());
    out.beta1 = 1.0 + (lam_min_vsv * lam_min_vsv) / (4.0 * sigma_max * sigma_max);
    out.beta2 = 1.0 / (4.0 * sigma_max * sigma_max);
    out.norm_gap_bounds = {(out.beta1 - 1.0) * c1 + out.beta2 * c * c / c1,
                           out.beta1 * c1 + out.beta2 * c * c / c1};
    return out;
}

bool norm_gap_check(const AdversarialConstruction& construction, const Matrix& x_std, const Matrix& x_ext,
                    const Matrix& sigma, const ToleranceConfig& tol) {
    RegressionInstance inst =
        RegressionInstance::noiseless(x_std, x_ext, construction.theta_star, sigma);
    Estimator est_std = min_norm_fit(inst.standard, std::nullopt, tol);
    double std_gap = construction.theta_star.squaredNorm() - est_std.theta.squaredNorm();
    double c = construction.target_increase;
    double minimized_bound = 2.0 * std::sqrt(construction.beta1 * construction.beta2 * c * c);
    return std_gap + tol.eq_abs_tol >= minimized_bound;
}

std::vector<DirectionScanEntry> safe_region_scan(const Matrix& x_std, const Matrix& sigma,
                                                 const Vector& theta_star,
                                                 const std::vector<Vector>& directions,
                                                 const ToleranceConfig& tol) {
    std::vector<DirectionScanEntry> out;
    out.reserve(directions.size());
    for (const Vector& dir : directions) {
        TradeoffDecomposition dec = decompose(theta_star, x_std, dir.transpose(), sigma, tol);
        DirectionScanEntry entry;
        entry.direction = dir;
        entry.error_diff = -dec.direct_diff;
        entry.safe = entry.error_diff <= 1e-10;
        out.push_back(std::move(entry));
    }
    return out;
}

}  // namespace auglab
