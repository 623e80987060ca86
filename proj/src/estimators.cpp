#include "auglab/estimators.hpp"

#include <cmath>

#include "auglab/errors.hpp"
#include "auglab/linalg.hpp"
#include "auglab/lp.hpp"

namespace auglab {

void LabeledData::validate() const {
    require_finite(X, "LabeledData.X");
    require_finite(y, "LabeledData.y");
    if (X.rows() != y.size()) throw std::invalid_argument("LabeledData: X rows and y length differ");
}

void ExtraData::validate() const {
    require_finite(X, "ExtraData.X");
    require_finite(y, "ExtraData.y");
    if (X.rows() != y.size()) throw std::invalid_argument("ExtraData: X rows and y length differ");
}

void PopulationModel::validate() const {
    require_finite(theta_star, "PopulationModel.theta_star");
    require_finite(sigma, "PopulationModel.sigma");
    if (sigma.rows() != sigma.cols()) throw std::invalid_argument("PopulationModel: sigma must be square");
    if (sigma.rows() != theta_star.size())
        throw std::invalid_argument("PopulationModel: sigma and theta_star dimensions differ");
    double scale = sigma.cwiseAbs().maxCoeff();
    if ((sigma - sigma.transpose()).cwiseAbs().maxCoeff() > 1e-8 * (1.0 + scale))
        throw std::invalid_argument("PopulationModel: sigma must be symmetric");
}

void DiscreteDomain::validate() const {
    if (points.size() != probs.size()) throw std::invalid_argument("DiscreteDomain: points/probs size mismatch");
    if (!perturbation_sets.empty() && perturbation_sets.size() != points.size())
        throw std::invalid_argument("DiscreteDomain: perturbation_sets size mismatch");
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw std::invalid_argument("DiscreteDomain: negative probability");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("DiscreteDomain: probabilities must sum to 1");
    for (const auto& set : perturbation_sets)
        for (int idx : set)
            if (idx < 0 || idx >= static_cast<int>(points.size()))
                throw std::invalid_argument("DiscreteDomain: perturbation index out of range");
}

std::pair<Matrix, Vector> stack_systems(const LabeledData& data, const std::optional<ExtraData>& extra) {
    data.validate();
    if (!extra) return {data.X, data.y};
    extra->validate();
    if (extra->X.cols() != data.X.cols())
        throw std::invalid_argument("stack_systems: standard and extra data dimensions differ");
    Matrix a(data.X.rows() + extra->X.rows(), data.X.cols());
    a << data.X, extra->X;
    Vector b(data.y.size() + extra->y.size());
    b << data.y, extra->y;
    return {a, b};
}

Estimator min_norm_fit(const LabeledData& data, const std::optional<ExtraData>& extra, const ToleranceConfig& tol) {
    auto [a, b] = stack_systems(data, extra);
    Vector theta = linalg::pinv(a, tol) * b;
    double resid = (a * theta - b).norm();
    if (resid > tol.eq_abs_tol * (1.0 + b.norm()))
        throw InfeasibleError("min_norm_fit: system inconsistent (perturbation targets are not consistent)");
    return {theta, NormKind::euclidean, resid, theta.norm()};
}

Estimator m_norm_fit(const LabeledData& data, const std::optional<ExtraData>& extra, const Matrix& m,
                     const ToleranceConfig& tol) {
    auto [a, b] = stack_systems(data, extra);
    if (m.rows() != a.cols() || m.cols() != a.cols())
        throw std::invalid_argument("m_norm_fit: M dimension mismatch");
    linalg::SymRootInv root = linalg::sym_root_inv(m, tol);

    // Rotate x <- M^{-1/2} x, fit min Euclidean norm, map theta = M^{-1/2} phi back.
    Matrix a_rot = a * root.inverse_root;
    Matrix a_rot_pinv = linalg::pinv(a_rot, tol);
    Vector phi = a_rot_pinv * b;
    phi += a_rot_pinv * (b - a_rot * phi);  // one refinement pass; the rotation can be ill-conditioned
    Vector theta = root.inverse_root * phi;
    double resid = (a * theta - b).norm();
    if (resid > tol.eq_abs_tol * (1.0 + b.norm()))
        throw InfeasibleError("m_norm_fit: system inconsistent");
    double mnorm = std::sqrt(std::max(0.0, theta.dot(m * theta)));
    return {theta, NormKind::m_norm, resid, mnorm};
}

Estimator l1_fit(const LabeledData& data, const std::optional<ExtraData>& extra) {
    auto [a, b] = stack_systems(data, extra);
    lp::LpSolution sol = lp::min_l1_interpolant(a, b);
    double resid = (a * sol.x - b).norm();
    return {sol.x, NormKind::l1, resid, sol.x.lpNorm<1>()};
}

double standard_error(const Vector& theta, const PopulationModel& model) {
    model.validate();
    if (theta.size() != model.theta_star.size())
        throw std::invalid_argument("standard_error: dimension mismatch");
    Vector delta = theta - model.theta_star;
    return delta.dot(model.sigma * delta);
}

double robust_error_discrete(const Vector& theta, const PopulationModel& model, const DiscreteDomain& domain) {
    domain.validate();
    double total = 0.0;
    for (size_t i = 0; i < domain.points.size(); ++i) {
        const Vector& x = domain.points[i];
        if (x.size() != theta.size()) throw std::invalid_argument("robust_error_discrete: point dimension mismatch");
        double target = x.dot(model.theta_star);
        double worst = 0.0;
        bool any = false;
        if (i < domain.perturbation_sets.size()) {
            for (int idx : domain.perturbation_sets[i]) {
                double e = domain.points[static_cast<size_t>(idx)].dot(theta) - target;
                worst = any ? std::max(worst, e * e) : e * e;
                any = true;
            }
        }
        if (!any) {
            double e = x.dot(theta) - target;
            worst = e * e;
        }
        total += domain.probs[i] * worst;
    }
    return total;
}

double standard_error_discrete(const Vector& theta, const PopulationModel& model, const DiscreteDomain& domain) {
    domain.validate();
    double total = 0.0;
    for (size_t i = 0; i < domain.points.size(); ++i) {
        double e = domain.points[i].dot(theta) - domain.points[i].dot(model.theta_star);
        total += domain.probs[i] * e * e;
    }
    return total;
}

}  // namespace auglab
