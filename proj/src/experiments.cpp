#include "auglab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "auglab/errors.hpp"
#include "auglab/l1lab.hpp"
#include "auglab/linalg.hpp"
#include "auglab/rng.hpp"
#include "auglab/rst.hpp"
#include "auglab/spline.hpp"
#include "auglab/tradeoff.hpp"
#include "auglab/variance.hpp"

namespace auglab::experiments {

namespace {

using json = nlohmann::json;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// Parameter handling

class Params {
public:
    Params(const std::map<std::string, std::string>& raw, const ExperimentInfo& info) {
        for (const auto& [key, text] : raw) {
            bool known = false;
            for (const auto& p : info.params)
                if (p.name == key) known = true;
            if (!known)
                throw std::invalid_argument("unknown parameter '" + key + "' for experiment " + info.name);
            try {
                values_[key] = json::parse(text);
            } catch (const json::exception&) {
                values_[key] = json(text);  // bare strings arrive unquoted from CLI overrides
            }
        }
    }

    int get_int(const std::string& key, int def) const {
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        if (!it->second.is_number_integer()) throw std::invalid_argument("parameter '" + key + "' must be an integer");
        return it->second.get<int>();
    }

    double get_double(const std::string& key, double def) const {
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        if (!it->second.is_number()) throw std::invalid_argument("parameter '" + key + "' must be a number");
        return it->second.get<double>();
    }

    std::vector<int> get_int_list(const std::string& key, std::vector<int> def) const {
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        if (!it->second.is_array()) throw std::invalid_argument("parameter '" + key + "' must be an integer list");
        return it->second.get<std::vector<int>>();
    }

    std::vector<double> get_double_list(const std::string& key, std::vector<double> def) const {
        auto it = values_.find(key);
        if (it == values_.end()) return def;
        if (!it->second.is_array()) throw std::invalid_argument("parameter '" + key + "' must be a number list");
        return it->second.get<std::vector<double>>();
    }

private:
    std::map<std::string, json> values_;
};

std::string list_to_string(const std::vector<int>& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

// ---------------------------------------------------------------------------
// Random instance generators shared by the verification suites

// Gaussian matrix with singular values rescaled into [0.5, 2]: random rank
// structure without float-noise rank ambiguity.
Matrix conditioned_matrix(Rng& rng, int rows, int cols) {
    Matrix g = rng.gaussian_matrix(rows, cols);
    Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Index r = std::min(g.rows(), g.cols());
    Vector sv(r);
    for (Index i = 0; i < r; ++i) sv[i] = 0.5 + 1.5 * static_cast<double>(r - i) / static_cast<double>(r);
    return svd.matrixU() * sv.asDiagonal() * svd.matrixV().transpose();
}

Matrix diag3(double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return Matrix(v.asDiagonal());
}

struct RandomInstance {
    Matrix x_std, x_ext;
    Vector theta_star;
    Matrix sigma;
};

RandomInstance random_instance(Rng& rng, int d_min, int d_max) {
    RandomInstance inst;
    int d = rng.uniform_int(d_min, d_max);
    int n = rng.uniform_int(1, d);
    int m = rng.uniform_int(1, d);
    inst.x_std = rng.gaussian_matrix(n, d);
    inst.x_ext = rng.gaussian_matrix(m, d);
    inst.theta_star = rng.gaussian_vector(d);
    inst.sigma = rng.psd_matrix(d);
    return inst;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    size_t mid = v.size() / 2;
    return v.size() % 2 == 1 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

// ---------------------------------------------------------------------------
// Verification suites

ExperimentReport verify_theorem1(std::uint64_t seed) {
    Timer timer;
    ExperimentReport report;
    report.name = "verify-theorem1";
    report.echo("seed", static_cast<double>(seed));
    report.columns = {"instance", "d", "n", "m", "rel_identity_err", "orthogonality_err"};

    const int instances = 500;
    double max_rel = 0.0, max_orth = 0.0;
    bool identity_ok = true, orth_ok = true, scale_ok = true;

    for (int i = 0; i < instances; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        RandomInstance inst = random_instance(rng, 2, 20);
        TradeoffDecomposition dec = decompose(inst.theta_star, inst.x_std, inst.x_ext, inst.sigma);

        double rel = std::abs(dec.predicted_diff - dec.direct_diff) / (1.0 + std::abs(dec.direct_diff));
        double orth = std::abs(dec.v.dot(dec.w)) / std::max(1.0, dec.v.norm() * dec.w.norm());
        max_rel = std::max(max_rel, rel);
        max_orth = std::max(max_orth, orth);
        if (rel > 1e-8) identity_ok = false;
        if (orth > 1e-9) orth_ok = false;

        if (i < 20) {  // error difference scales with t^2, sign invariant
            double t = 1.0 + rng.uniform();
            TradeoffDecomposition scaled =
                decompose(Vector(t * inst.theta_star), inst.x_std, inst.x_ext, inst.sigma);
            if (std::abs(scaled.direct_diff - t * t * dec.direct_diff) >
                1e-8 * (1.0 + std::abs(scaled.direct_diff)))
                scale_ok = false;
        }
        report.rows.push_back({static_cast<double>(i), static_cast<double>(inst.sigma.rows()),
                               static_cast<double>(inst.x_std.rows()), static_cast<double>(inst.x_ext.rows()),
                               rel, orth});
    }

    report.add_summary("instances", instances);
    report.add_summary("max_rel_identity_err", max_rel);
    report.add_summary("max_orthogonality_err", max_orth);
    report.add_check("identity_within_1e-8_on_500_instances", identity_ok);
    report.add_check("v_w_orthogonal_within_1e-9", orth_ok);
    report.add_check("difference_scales_quadratically", scale_ok);
    report.wall_seconds = timer.seconds();
    return report;
}

ExperimentReport verify_safe_conditions(std::uint64_t seed) {
    Timer timer;
    ExperimentReport report;
    report.name = "verify-safe-conditions";
    report.echo("seed", static_cast<double>(seed));
    report.columns = {"condition", "instances", "min_direct_diff", "flag_hits"};

    const int per_condition = 200;
    ToleranceConfig tol;

    // Condition 1: sigma proportional to identity.
    {
        double min_diff = 0.0;
        int flags = 0;
        bool first = true;
        for (int i = 0; i < per_condition; ++i) {
            Rng rng(derive_seed(seed, 0x100000u + static_cast<std::uint64_t>(i)));
            RandomInstance inst = random_instance(rng, 2, 12);
            double gamma = 0.5 + 2.0 * rng.uniform();
            inst.sigma = gamma * Matrix::Identity(inst.sigma.rows(), inst.sigma.cols());
            RegressionInstance reg =
                RegressionInstance::noiseless(inst.x_std, inst.x_ext, inst.theta_star, inst.sigma);
            SafeConditionReport flags_report = check_safe_conditions(reg, tol);
            if (flags_report.identity_cov) ++flags;
            TradeoffDecomposition dec = decompose(inst.theta_star, inst.x_std, inst.x_ext, inst.sigma);
            min_diff = first ? dec.direct_diff : std::min(min_diff, dec.direct_diff);
            first = false;
        }
        report.rows.push_back({1.0, static_cast<double>(per_condition), min_diff, static_cast<double>(flags)});
        report.add_check("identity_cov_never_increases", min_diff >= -1e-10);
        report.add_check("identity_cov_flag_detected", flags == per_condition);
    }

    // Condition 2: augmented data spans the whole space.
    {
        double min_diff = 0.0;
        int flags = 0;
        bool first = true;
        for (int i = 0; i < per_condition; ++i) {
            Rng rng(derive_seed(seed, 0x200000u + static_cast<std::uint64_t>(i)));
            int d = rng.uniform_int(2, 12);
            int n = rng.uniform_int(1, d);
            Matrix x_std = rng.gaussian_matrix(n, d);
            Matrix x_ext = rng.gaussian_matrix(d, d);  // full rank almost surely
            Vector theta_star = rng.gaussian_vector(d);
            Matrix sigma = rng.psd_matrix(d);
            RegressionInstance reg = RegressionInstance::noiseless(x_std, x_ext, theta_star, sigma);
            if (check_safe_conditions(reg, tol).aug_spans_space) ++flags;
            TradeoffDecomposition dec = decompose(theta_star, x_std, x_ext, sigma);
            min_diff = first ? dec.direct_diff : std::min(min_diff, dec.direct_diff);
            first = false;
        }
        report.rows.push_back({2.0, static_cast<double>(per_condition), min_diff, static_cast<double>(flags)});
        report.add_check("full_span_never_increases", min_diff >= -1e-10);
        report.add_check("full_span_flag_detected", flags == per_condition);
    }

    // Condition 3: single extra point whose nullspace projection is an
    // eigenvector of sigma (constructed as such).
    {
        double min_diff = 0.0;
        int flags = 0;
        bool first = true;
        for (int i = 0; i < per_condition; ++i) {
            Rng rng(derive_seed(seed, 0x300000u + static_cast<std::uint64_t>(i)));
            int d = rng.uniform_int(3, 12);
            int n = rng.uniform_int(1, d - 1);
            Matrix x_std = rng.gaussian_matrix(n, d);
            Matrix null_basis = linalg::nullspace_basis(x_std, tol);
            Vector q = null_basis * rng.gaussian_vector(null_basis.cols());
            q.normalize();
            Matrix complement = Matrix::Identity(d, d) - q * q.transpose();
            double lambda = 0.2 + 3.0 * rng.uniform();
            Matrix sigma = lambda * q * q.transpose() + complement * rng.psd_matrix(d) * complement;
            Matrix row_basis = linalg::rowspace_basis(x_std, tol);
            Vector x_ext = q + 0.5 * (row_basis * rng.gaussian_vector(row_basis.cols()));
            Vector theta_star = rng.gaussian_vector(d);

            RegressionInstance reg =
                RegressionInstance::noiseless(x_std, x_ext.transpose(), theta_star, sigma);
            if (check_safe_conditions(reg, tol).single_eigvec) ++flags;
            TradeoffDecomposition dec = decompose(theta_star, x_std, x_ext.transpose(), sigma);
            min_diff = first ? dec.direct_diff : std::min(min_diff, dec.direct_diff);
            first = false;
        }
        report.rows.push_back({3.0, static_cast<double>(per_condition), min_diff, static_cast<double>(flags)});
        report.add_check("eigenvector_never_increases", min_diff >= -1e-10);
        report.add_check("eigenvector_flag_detected", flags == per_condition);
    }

    // Closed-form 3D inequality vs measured sign on a 10x10x10 grid
    // (restricted to theta1 + theta2 > 0 where the closed form is exact).
    {
        int disagreements = 0, evaluated = 0;
        Matrix x_std(1, 3), x_ext(1, 3);
        x_std << 0, 0, 1;
        x_ext << 1, 1, 0;
        const std::vector<double> ratios = {0.05, 0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0};
        for (int a = 0; a < 10; ++a) {
            for (int b = 0; b < 10; ++b) {
                for (double r : ratios) {
                    double t1 = 0.25 + 0.25 * a;
                    double t2 = -0.2 + 0.25 * b;
                    Vector theta_star(3);
                    theta_star << t1, t2, 5.0;
                    Matrix sigma = diag3(1.0, r, 1.0);
                    TradeoffDecomposition dec = decompose(theta_star, x_std, x_ext, sigma);
                    double increase = -dec.direct_diff;
                    if (std::abs(increase) <= 1e-8) continue;  // neutrality band
                    ++evaluated;
                    if (condition_3d(theta_star, 1.0, r) != (increase > 0.0)) ++disagreements;
                }
            }
        }
        report.add_summary("grid_points_evaluated", evaluated);
        report.add_summary("grid_disagreements", disagreements);
        report.add_check("closed_form_3d_predicts_sign", disagreements == 0);
    }

    // Sign agreement of the single-point condition on random instances.
    {
        bool sign_ok = true;
        int evaluated = 0;
        for (int i = 0; i < 200; ++i) {
            Rng rng(derive_seed(seed, 0x400000u + static_cast<std::uint64_t>(i)));
            int d = rng.uniform_int(2, 10);
            int n = rng.uniform_int(1, d - 1 > 0 ? d - 1 : 1);
            Matrix x_std = rng.gaussian_matrix(n, d);
            Vector x_ext = rng.gaussian_vector(d);
            Vector theta_star = rng.gaussian_vector(d);
            Matrix sigma = rng.psd_matrix(d);
            double value;
            try {
                value = single_point_condition(x_ext, x_std, sigma, theta_star);
            } catch (const DegenerateDirectionError&) {
                continue;
            }
            TradeoffDecomposition dec = decompose(theta_star, x_std, x_ext.transpose(), sigma);
            double increase = -dec.direct_diff;
            if (std::abs(increase) <= 1e-8 || std::abs(value) <= 1e-8) continue;
            ++evaluated;
            if ((value > 0.0) != (increase > 0.0)) sign_ok = false;
        }
        report.add_summary("sign_agreement_instances", evaluated);
        report.add_check("single_point_condition_sign_agreement", sign_ok);
    }

    report.wall_seconds = timer.seconds();
    return report;
}

ExperimentReport verify_variance(std::uint64_t seed) {
    Timer timer;
    ExperimentReport report;
    report.name = "verify-variance";
    report.echo("seed", static_cast<double>(seed));
    report.columns = {"instance", "t1", "t2", "rel_err"};

    bool decomposition_ok = true, nonneg_ok = true;
    for (int i = 0; i < 200; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        int d = rng.uniform_int(2, 15);
        int n = rng.uniform_int(1, d);
        int m = rng.uniform_int(1, d);
        Matrix x_std = conditioned_matrix(rng, n, d);
        Matrix x_ext = conditioned_matrix(rng, m, d);
        Matrix sigma = rng.psd_matrix(d);
        VarianceReport vr = variance_difference(sigma, x_std, x_ext, 1.0);
        double rel = std::abs(vr.predicted_diff - vr.direct_diff) / (1.0 + std::abs(vr.direct_diff));
        if (rel > 1e-8) decomposition_ok = false;
        if (vr.t1 < -1e-10 || vr.t2 < -1e-10) nonneg_ok = false;
        report.rows.push_back({static_cast<double>(i), vr.t1, vr.t2, rel});
    }
    report.add_check("t1_minus_t2_matches_direct_trace", decomposition_ok);
    report.add_check("t1_t2_nonnegative", nonneg_ok);

    // Extremes: extra data fully inside / outside the standard row space.
    {
        bool extremes_ok = true;
        for (int i = 0; i < 20; ++i) {
            Rng rng(derive_seed(seed, 0x900000u + static_cast<std::uint64_t>(i)));
            int d = rng.uniform_int(3, 10);
            int n = rng.uniform_int(1, d - 1);
            Matrix x_std = rng.gaussian_matrix(n, d);
            Matrix sigma = rng.psd_matrix(d);
            Matrix null_p = linalg::null_projector(x_std);
            Matrix row_p = linalg::row_projector(x_std);
            Matrix ext_null = rng.gaussian_matrix(2, d) * null_p;
            Matrix ext_row = rng.gaussian_matrix(2, d) * row_p;
            VarianceReport in_null = variance_difference(sigma, x_std, ext_null, 1.0);
            VarianceReport in_row = variance_difference(sigma, x_std, ext_row, 1.0);
            if (std::abs(in_null.t2) > 1e-8 || in_null.direct_diff < -1e-8) extremes_ok = false;
            if (std::abs(in_row.t1) > 1e-8 || in_row.direct_diff > 1e-8) extremes_ok = false;
        }
        report.add_check("nullspace_extra_raises_rowspace_extra_lowers", extremes_ok);
    }

    // Canonical 3D instance: Monte-Carlo vs analytic.
    {
        Matrix x_std(1, 3), x_ext(1, 3);
        x_std << 0, 0, 1;
        x_ext << 1, 1, 0;
        Matrix sigma = diag3(1.0, 4.0, 1.0);
        Vector theta_star(3);
        theta_star << 1, 0, 5;
        VarianceReport vr = variance_difference(sigma, x_std, x_ext, 1.0);
        auto [v_std, v_aug] = monte_carlo_variance(x_std, x_ext, sigma, theta_star, 1.0, 100000,
                                                   derive_seed(seed, 0xA00000u));
        double analytic_diff = vr.predicted_diff;
        report.add_summary("analytic_t1", vr.t1);
        report.add_summary("analytic_t2", vr.t2);
        report.add_summary("analytic_diff", analytic_diff);
        report.add_summary("mc_v_std", v_std);
        report.add_summary("mc_v_aug", v_aug);
        report.add_check("canonical_t1_is_1.25",
                         std::abs(vr.t1 - 1.25) <= 1e-10 && std::abs(vr.t2) <= 1e-10);
        report.add_check("mc_diff_within_2pct",
                         std::abs((v_aug - v_std) - analytic_diff) <= 0.02 * std::abs(analytic_diff));
        report.add_check("mc_v_std_within_2pct", std::abs(v_std - 1.0) <= 0.02);
    }

    report.wall_seconds = timer.seconds();
    return report;
}

ExperimentReport verify_kovanic(std::uint64_t seed) {
    Timer timer;
    ExperimentReport report;
    report.name = "verify-kovanic";
    report.echo("seed", static_cast<double>(seed));
    report.columns = {"instance", "d", "frobenius_err"};

    bool ok = true;
    double max_err = 0.0;
    for (int i = 0; i < 200; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        int d = rng.uniform_int(2, 15);
        int k = rng.uniform_int(1, d);  // rank-deficient sigma_std included
        int m = rng.uniform_int(1, d);
        Matrix g = conditioned_matrix(rng, k, d);
        Matrix sigma_std = g.transpose() * g;
        Matrix x_ext = conditioned_matrix(rng, m, d);

        Matrix via_identity = kovanic_pinv_sum(sigma_std, x_ext);
        Matrix direct = linalg::pinv(Matrix(sigma_std + x_ext.transpose() * x_ext));
        double err = (via_identity - direct).norm() / (1.0 + direct.norm());
        max_err = std::max(max_err, err);
        if (err > 1e-8) ok = false;
        report.rows.push_back({static_cast<double>(i), static_cast<double>(d), err});
    }
    report.add_summary("max_frobenius_err", max_err);
    report.add_check("kovanic_matches_direct_pinv", ok);
    report.wall_seconds = timer.seconds();
    return report;
}

namespace {

struct RstRandomInstance {
    LabeledData data;
    Matrix sigma;
    Vector theta_star;
    PerturbationSpan span;
    DiscreteDomain domain;
    Vector theta_int;  // pseudo-labeler (sometimes deliberately bad)
};

RstRandomInstance random_rst_instance(Rng& rng, bool bad_labeler) {
    ToleranceConfig tol;
    int d = rng.uniform_int(3, 12);
    Vector theta_star = rng.gaussian_vector(d);

    int span_dim = rng.uniform_int(1, std::max(1, d - 2));
    Matrix span_rows(span_dim, d);
    for (int i = 0; i < span_dim; ++i) {
        Vector row = rng.gaussian_vector(d);
        row -= row.dot(theta_star) / theta_star.squaredNorm() * theta_star;  // consistency
        span_rows.row(i) = row.transpose();
    }
    PerturbationSpan span = PerturbationSpan::from_rows(span_rows, tol);

    // Discrete domain: base points plus their span-shifted perturbations.
    int bases = rng.uniform_int(2, 4);
    std::vector<Vector> points;
    std::vector<std::vector<int>> tsets;
    for (int b = 0; b < bases; ++b) {
        Vector base = rng.gaussian_vector(d);
        int base_idx = static_cast<int>(points.size());
        points.push_back(base);
        tsets.push_back({base_idx});
        int perts = rng.uniform_int(1, 2);
        for (int q = 0; q < perts; ++q) {
            Vector shift = span.basis.transpose() * (0.7 * rng.gaussian_vector(span.basis.rows()));
            int pert_idx = static_cast<int>(points.size());
            points.push_back(base + shift);
            tsets[static_cast<size_t>(base_idx)].push_back(pert_idx);
            tsets.push_back({pert_idx, base_idx});
        }
    }
    std::vector<double> probs(points.size());
    double total = 0.0;
    for (double& p : probs) {
        p = 0.05 + rng.uniform();
        total += p;
    }
    for (double& p : probs) p /= total;

    Matrix sigma = Matrix::Zero(d, d);
    for (size_t i = 0; i < points.size(); ++i)
        sigma.noalias() += probs[i] * (points[i] * points[i].transpose());

    int n = rng.uniform_int(1, static_cast<int>(points.size()));
    Matrix x_std(n, d);
    for (int i = 0; i < n; ++i)
        x_std.row(i) = points[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(points.size()) - 1))]
                           .transpose();

    RstRandomInstance inst;
    inst.data = LabeledData{x_std, Vector(x_std * theta_star)};
    inst.sigma = sigma;
    inst.theta_star = theta_star;
    inst.span = span;
    inst.domain.points = std::move(points);
    inst.domain.probs = std::move(probs);
    inst.domain.perturbation_sets = std::move(tsets);

    Vector theta_int = min_norm_fit(inst.data, std::nullopt, tol).theta;
    if (bad_labeler) {
        Matrix null_basis = linalg::nullspace_basis(x_std, tol);
        if (null_basis.cols() > 0)
            theta_int += null_basis * rng.gaussian_vector(null_basis.cols());
    }
    inst.theta_int = theta_int;
    return inst;
}

}  // namespace

ExperimentReport verify_rst(std::uint64_t seed) {
    Timer timer;
    ExperimentReport report;
    report.name = "verify-rst";
    report.echo("seed", static_cast<double>(seed));
    report.columns = {"instance", "d", "iterations", "labeler_error", "rst_error", "rob_minus_std"};

    bool no_tradeoff_ok = true, robust_ok = true, iterations_ok = true, rank_growth_ok = true,
         monotone_ok = true;

    for (int i = 0; i < 200; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        RstRandomInstance inst = random_rst_instance(rng, i % 2 == 1);

        RSTSolution sol =
            build_constraint_basis(inst.theta_int, inst.span, inst.data.X, inst.data.y, inst.sigma);
        PopulationModel model{inst.theta_star, inst.sigma};
        RSTGuarantees g = verify_rst_guarantees(sol, model, inst.domain, inst.data.X);

        if (g.rst_standard_error > g.pseudo_labeler_error + 1e-10) no_tradeoff_ok = false;
        if (std::abs(g.rst_robust_error - g.rst_standard_error) > 1e-8) robust_ok = false;

        Index d = inst.theta_star.size();
        Index rank_std = linalg::numerical_rank(inst.data.X);
        if (sol.iterations > d - rank_std) iterations_ok = false;
        if (linalg::numerical_rank(sol.x_ext_built) != sol.x_ext_built.rows()) rank_growth_ok = false;

        Vector delta = sol.theta - inst.theta_int;
        Vector delta0 = Vector::Zero(d);
        double final_obj = delta.dot(inst.sigma * delta);
        if (final_obj < delta0.dot(inst.sigma * delta0) - 1e-12) monotone_ok = false;

        report.rows.push_back({static_cast<double>(i), static_cast<double>(d),
                               static_cast<double>(sol.iterations), g.pseudo_labeler_error,
                               g.rst_standard_error, g.rst_robust_error - g.rst_standard_error});
    }

    report.add_check("no_tradeoff_on_200_instances", no_tradeoff_ok);
    report.add_check("robust_error_equals_standard_error", robust_ok);
    report.add_check("iterations_at_most_d_minus_rank", iterations_ok);
    report.add_check("constraint_rows_independent", rank_growth_ok);
    report.add_check("objective_nonnegative", monotone_ok);
    report.wall_seconds = timer.seconds();
    return report;
}

ExperimentReport verify_adversarial(std::uint64_t seed) {
    Timer timer;
    ExperimentReport report;
    report.name = "verify-adversarial";
    report.echo("seed", static_cast<double>(seed));
    report.columns = {"instance", "d", "achieved_increase", "aug_gap_margin", "std_gap_margin"};

    const double c = 1.0, c1 = 1.0;
    bool achieved_ok = true, bounds_ok = true, minimized_ok = true;

    int built = 0;
    std::uint64_t stream = 0;
    while (built < 50 && stream < 5000) {
        Rng rng(derive_seed(seed, stream++));
        int d = rng.uniform_int(3, 12);
        int n = rng.uniform_int(1, std::max(1, d - 2));
        int m = rng.uniform_int(1, std::max(1, d - n - 1));
        Matrix x_std = rng.gaussian_matrix(n, d);
        Matrix x_ext = rng.gaussian_matrix(m, d);
        Matrix sigma = rng.psd_matrix(d);

        AdversarialConstruction con;
        try {
            con = construct_adversarial_theta(x_std, x_ext, sigma, c, c1);
        } catch (const ConstructionImpossibleError&) {
            continue;  // geometry without a (w, v) pair; try another draw
        }

        RegressionInstance reg = RegressionInstance::noiseless(x_std, x_ext, con.theta_star, sigma);
        Estimator est_std = min_norm_fit(reg.standard);
        Estimator est_aug = min_norm_fit(reg.standard, reg.extra);
        double aug_gap = con.theta_star.squaredNorm() - est_aug.theta.squaredNorm();
        double std_gap = con.theta_star.squaredNorm() - est_std.theta.squaredNorm();
        double aug_margin = aug_gap - con.norm_gap_bounds.first;
        double std_margin = std_gap - con.norm_gap_bounds.second;

        if (std::abs(con.achieved_increase - c) > 1e-6) achieved_ok = false;
        if (aug_margin < -1e-9 || std_margin < -1e-9) bounds_ok = false;
        if (!norm_gap_check(con, x_std, x_ext, sigma)) minimized_ok = false;

        report.rows.push_back({static_cast<double>(built), static_cast<double>(d), con.achieved_increase,
                               aug_margin, std_margin});
        ++built;
    }

    bool identity_impossible = false;
    try {
        Matrix x_std(1, 4), x_ext(1, 4);
        x_std << 1, 0, 0, 0;
        x_ext << 0, 1, 0, 0;
        construct_adversarial_theta(x_std, x_ext, Matrix::Identity(4, 4), c, c1);
    } catch (const ConstructionImpossibleError&) {
        identity_impossible = true;
    }

    report.add_summary("constructions", built);
    report.add_check("fifty_geometries_constructed", built == 50);
    report.add_check("achieved_increase_within_1e-6", achieved_ok);
    report.add_check("norm_gap_bounds_nonnegative_margin", bounds_ok);
    report.add_check("minimized_bound_holds", minimized_ok);
    report.add_check("identity_sigma_construction_impossible", identity_impossible);
    report.wall_seconds = timer.seconds();
    return report;
}

ExperimentReport run_verify(const std::string& suite, std::uint64_t seed) {
    if (suite == "theorem1") return verify_theorem1(seed);
    if (suite == "safe-conditions") return verify_safe_conditions(seed);
    if (suite == "variance") return verify_variance(seed);
    if (suite == "kovanic") return verify_kovanic(seed);
    if (suite == "rst") return verify_rst(seed);
    if (suite == "all") {
        Timer timer;
        ExperimentReport combined;
        combined.name = "verify-all";
        combined.echo("seed", static_cast<double>(seed));
        combined.columns = {"suite_index", "checks", "failures"};
        const std::vector<ExperimentReport> parts = {
            verify_theorem1(seed),      verify_safe_conditions(seed), verify_variance(seed),
            verify_kovanic(seed),       verify_rst(seed),             verify_adversarial(seed)};
        double idx = 0.0;
        for (const auto& part : parts) {
            int failures = 0;
            for (const auto& [name, ok] : part.checks) {
                combined.add_check(part.name + "/" + name, ok);
                if (!ok) ++failures;
            }
            combined.rows.push_back({idx, static_cast<double>(part.checks.size()),
                                     static_cast<double>(failures)});
            idx += 1.0;
        }
        combined.wall_seconds = timer.seconds();
        return combined;
    }
    throw std::invalid_argument("unknown verify suite '" + suite +
                                "' (expected theorem1, safe-conditions, variance, kovanic, rst or all)");
}

// ---------------------------------------------------------------------------
// Experiments

namespace {

ExperimentReport exp_spline_sample_size(const Params& params, std::uint64_t seed) {
    Timer timer;
    int s = params.get_int("s", 10);
    double epsilon = params.get_double("epsilon", 0.1);
    double delta = params.get_double("delta", 0.1);
    std::vector<int> n_list = params.get_int_list("n_list", {22, 50, 100, 250, 500, 1000});
    int trials = params.get_int("trials", 25);

    StaircaseProblem problem = StaircaseProblem::create(s, epsilon, delta);
    std::vector<SampleSizeRow> rows = sample_size_sweep(problem, n_list, trials, seed);

    ExperimentReport report;
    report.name = "spline-sample-size";
    report.echo("seed", static_cast<double>(seed));
    report.echo("s", static_cast<double>(s));
    report.echo("epsilon", epsilon);
    report.echo("delta", delta);
    report.echo("n_list", list_to_string(n_list));
    report.echo("trials", static_cast<double>(trials));
    report.columns = {"n", "mean_gap", "std_gap", "full_support_trials", "mean_gap_full_support"};
    for (const auto& r : rows)
        report.rows.push_back({static_cast<double>(r.n), r.mean_gap, r.std_gap,
                               static_cast<double>(r.full_support_trials), r.mean_gap_full_support});

    report.add_summary("gap_at_min_n", rows.front().mean_gap);
    report.add_summary("gap_at_max_n", rows.back().mean_gap);
    report.add_check("gap_shrinks_with_sample_size", rows.back().mean_gap < rows.front().mean_gap);

    int best = -1;
    for (size_t i = 0; i < rows.size(); ++i)
        if (rows[i].full_support_trials > 0) best = static_cast<int>(i);
    bool full_support_zero =
        best >= 0 && std::abs(rows[static_cast<size_t>(best)].mean_gap_full_support) <= 1e-6;
    if (best >= 0)
        report.add_summary("gap_at_largest_full_support_n", rows[static_cast<size_t>(best)].mean_gap_full_support);
    report.add_check("full_support_gap_below_1e-6", full_support_zero);
    report.wall_seconds = timer.seconds();
    return report;
}

ExperimentReport exp_spline_interval_ratio(const Params& params, std::uint64_t seed) {
    Timer timer;
    std::vector<int> s_list = params.get_int_list("s_list", {4, 8, 16, 32});
    double c = params.get_double("c", 0.5);
    int mc_trials = params.get_int("mc_trials", 1000);

    std::vector<IntervalRatioRow> rows = interval_ratio_experiment(s_list, c, seed, mc_trials);

    ExperimentReport report;
    report.name = "spline-interval-ratio";
    report.echo("seed", static_cast<double>(seed));
    report.echo("s_list", list_to_string(s_list));
    report.echo("c", c);
    report.echo("mc_trials", static_cast<double>(mc_trials));
    report.echo("n_rule", "n = s");
    report.columns = {"s",         "delta",        "gamma",      "n",           "p_e1",
                      "p_e2",      "r_aug_e1",     "r_std_e2",   "r_std_e2_line", "r_std_one_pert",
                      "r_aug_lower", "r_std_total", "ratio",     "flat_violations"};
    bool increasing = true;
    int flat_violations = 0;
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        report.rows.push_back({static_cast<double>(r.s), r.delta, r.gamma, static_cast<double>(r.n),
                               r.p_e1, r.p_e2, r.r_aug_e1, r.r_std_e2, r.r_std_e2_line, r.r_std_one_pert,
                               r.r_aug_lower, r.r_std_total, r.ratio, static_cast<double>(r.flat_violations)});
        if (i > 0 && !(rows[i].ratio > rows[i - 1].ratio)) increasing = false;
        flat_violations += r.flat_violations;
    }
    report.add_summary("first_ratio", rows.front().ratio);
    report.add_summary("last_ratio", rows.back().ratio);
    report.add_check("ratio_strictly_increasing_in_s", increasing);
    report.add_check("flat_extrapolation_within_1e-6", flat_violations == 0);
    report.wall_seconds = timer.seconds();
    return report;
}

ExperimentReport exp_l1_ratio(const Params& params, std::uint64_t seed) {
    Timer timer;
    std::vector<int> d_list = params.get_int_list("d_list", {10, 50, 100, 500});
    double gamma = params.get_double("gamma", 2.0);
    int mc_trials = params.get_int("mc_trials", 200);
    double delta = params.get_double("delta", 0.5);

    std::vector<L1RatioRow> rows = ratio_experiment(d_list, gamma, seed, mc_trials, delta);

    ExperimentReport report;
    report.name = "l1-ratio";
    report.echo("seed", static_cast<double>(seed));
    report.echo("d_list", list_to_string(d_list));
    report.echo("gamma", gamma);
    report.echo("mc_trials", static_cast<double>(mc_trials));
    report.echo("delta", delta);
    report.columns = {"d", "analytic_bound", "empirical_ratio", "ratio_se", "mc_trials"};
    bool linear_growth = true, empirical_above = true;
    for (size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        report.rows.push_back({static_cast<double>(r.d), r.analytic_bound, r.empirical_ratio, r.ratio_se,
                               static_cast<double>(r.mc_trials)});
        if (i > 0) {
            double growth = rows[i].analytic_bound / rows[i - 1].analytic_bound;
            double dims = static_cast<double>(rows[i].d) / rows[i - 1].d;
            if (growth < 0.9 * dims) linear_growth = false;
        }
        // The bound is asymptotically tight, so allow Monte-Carlo noise.
        if (r.mc_trials > 0 && r.empirical_ratio < r.analytic_bound - 3.0 * r.ratio_se)
            empirical_above = false;
    }
    report.add_check("analytic_bound_grows_linearly", linear_growth);
    report.add_check("empirical_ratio_at_least_bound_minus_3se", empirical_above);
    report.wall_seconds = timer.seconds();
    return report;
}

ExperimentReport exp_safe_region(const Params& params, std::uint64_t seed) {
    Timer timer;
    int n_angles = params.get_int("n_angles", 120);
    std::vector<double> lambdas = params.get_double_list("lambdas", {1.0, 4.0, 1.0});
    std::vector<double> theta = params.get_double_list("theta_star", {1.0, 0.0, 5.0});
    if (n_angles < 4 || n_angles % 4 != 0)
        throw std::invalid_argument("parameter 'n_angles' must be a positive multiple of 4");
    if (lambdas.size() != 3 || theta.size() != 3)
        throw std::invalid_argument("parameters 'lambdas' and 'theta_star' must have 3 entries");

    Matrix x_std(1, 3);
    x_std << 0, 0, 1;
    Matrix sigma = diag3(lambdas[0], lambdas[1], lambdas[2]);
    Vector theta_star(3);
    theta_star << theta[0], theta[1], theta[2];

    std::vector<Vector> directions;
    directions.reserve(static_cast<size_t>(n_angles));
    for (int k = 0; k < n_angles; ++k) {
        double phi = 2.0 * M_PI * k / n_angles;
        Vector dir(3);
        dir << std::cos(phi), std::sin(phi), 0.0;
        directions.push_back(dir);
    }
    std::vector<DirectionScanEntry> scan = safe_region_scan(x_std, sigma, theta_star, directions);

    ExperimentReport report;
    report.name = "safe-region";
    report.echo("seed", static_cast<double>(seed));
    report.echo("n_angles", static_cast<double>(n_angles));
    report.columns = {"angle", "dir_x", "dir_y", "dir_z", "safe", "error_diff"};
    int safe_count = 0;
    for (int k = 0; k < n_angles; ++k) {
        const auto& e = scan[static_cast<size_t>(k)];
        double phi = 2.0 * M_PI * k / n_angles;
        report.rows.push_back({phi, e.direction[0], e.direction[1], e.direction[2],
                               e.safe ? 1.0 : 0.0, e.error_diff});
        if (e.safe) ++safe_count;
    }
    bool eig_safe = scan[0].safe && scan[static_cast<size_t>(n_angles / 4)].safe &&
                    scan[static_cast<size_t>(n_angles / 2)].safe &&
                    scan[static_cast<size_t>(3 * n_angles / 4)].safe;
    report.add_summary("safe_directions", safe_count);
    report.add_check("eigenvector_directions_safe", eig_safe);
    report.add_check("safe_cone_nonempty", safe_count > 0);
    bool skewed = std::abs(lambdas[0] - lambdas[1]) > 1e-12;
    report.add_check("unsafe_directions_exist_for_skewed_sigma", !skewed || safe_count < n_angles);
    report.wall_seconds = timer.seconds();
    return report;
}

struct SplineSeedRun {
    double err_std, err_aug, err_rst, rob_rst;
    int iterations;
    Index rank_slack;  // dim - rank(X_std), the termination bound
    Estimator est_std, est_aug;
    RSTSolution rst;
};

SplineSeedRun run_spline_seed(const StaircaseProblem& problem, const SplinePopulation& pop, int n,
                              std::uint64_t seed, std::uint64_t trial) {
    StaircaseSample sample = sample_staircase(problem, n, derive_seed(seed, trial * 2));
    AugmentationSample aug = sample_augmentations(sample.ts, problem, derive_seed(seed, trial * 2 + 1));

    SplineSeedRun run;
    run.est_std = spline_fit(sample.data, std::nullopt, problem);
    run.est_aug = spline_fit(sample.data, aug.data, problem);
    run.rst = rst_spline(sample, problem);
    run.err_std = standard_error(run.est_std.theta, pop.raw);
    run.err_aug = standard_error(run.est_aug.theta, pop.raw);
    run.err_rst = standard_error(run.rst.theta, pop.raw);
    run.rob_rst = robust_error_discrete(run.rst.theta, pop.raw, pop.domain);
    run.iterations = run.rst.iterations;
    run.rank_slack = problem.dim() - linalg::numerical_rank(sample.data.X);
    return run;
}

Vector decaying_stair_probs(int s, double decay) {
    Vector w(s);
    double mass = 1.0;
    for (int i = 0; i < s; ++i) {
        w[i] = mass;
        mass *= decay;
    }
    return Vector(w / w.sum());
}

ExperimentReport exp_rst_spline(const Params& params, std::uint64_t seed) {
    Timer timer;
    int s = params.get_int("s", 10);
    double epsilon = params.get_double("epsilon", 0.1);
    double delta = params.get_double("delta", 0.1);
    int n = params.get_int("n", 22);
    int seeds = params.get_int("seeds", 25);
    double stair_decay = params.get_double("stair_decay", 0.65);

    StaircaseProblem problem = StaircaseProblem::create(s, epsilon, delta, decaying_stair_probs(s, stair_decay));
    SplinePopulation pop = population_covariance(problem);

    ExperimentReport report;
    report.name = "rst-spline";
    report.echo("seed", static_cast<double>(seed));
    report.echo("s", static_cast<double>(s));
    report.echo("epsilon", epsilon);
    report.echo("delta", delta);
    report.echo("n", static_cast<double>(n));
    report.echo("seeds", static_cast<double>(seeds));
    report.echo("stair_decay", stair_decay);
    report.columns = {"trial", "err_std", "err_aug", "err_rst", "rob_rst", "rst_iterations"};

    std::vector<double> e_std, e_aug, e_rst;
    bool no_tradeoff_ok = true, robust_ok = true, iterations_ok = true;
    for (int t = 0; t < seeds; ++t) {
        SplineSeedRun run = run_spline_seed(problem, pop, n, seed, static_cast<std::uint64_t>(t));
        report.rows.push_back({static_cast<double>(t), run.err_std, run.err_aug, run.err_rst, run.rob_rst,
                               static_cast<double>(run.iterations)});
        e_std.push_back(run.err_std);
        e_aug.push_back(run.err_aug);
        e_rst.push_back(run.err_rst);
        if (run.err_rst > run.err_std + 1e-10) no_tradeoff_ok = false;
        if (std::abs(run.rob_rst - run.err_rst) > 1e-8) robust_ok = false;
        if (run.iterations > run.rank_slack) iterations_ok = false;
    }
    double med_std = median(e_std), med_aug = median(e_aug), med_rst = median(e_rst);
    report.add_summary("median_err_std", med_std);
    report.add_summary("median_err_aug", med_aug);
    report.add_summary("median_err_rst", med_rst);
    report.add_check("rst_never_exceeds_standard_error", no_tradeoff_ok);
    report.add_check("rst_robust_equals_standard", robust_ok);
    report.add_check("iterations_at_most_d_minus_rank", iterations_ok);
    report.add_check("augmentation_hurts_at_median", med_aug > med_std);
    report.add_check("rst_at_most_both_medians", med_rst <= med_std && med_rst <= med_aug);
    report.wall_seconds = timer.seconds();
    return report;
}

ExperimentReport exp_fig2(const Params& params, std::uint64_t seed) {
    Timer timer;
    int s = params.get_int("s", 10);
    double epsilon = params.get_double("epsilon", 0.1);
    double delta = params.get_double("delta", 0.1);
    int n = params.get_int("n", 22);
    int seeds = params.get_int("seeds", 25);
    int grid_points = params.get_int("grid_points", 400);
    double stair_decay = params.get_double("stair_decay", 0.65);

    StaircaseProblem problem = StaircaseProblem::create(s, epsilon, delta, decaying_stair_probs(s, stair_decay));
    SplinePopulation pop = population_covariance(problem);

    ExperimentReport report;
    report.name = "fig2";
    report.echo("seed", static_cast<double>(seed));
    report.echo("s", static_cast<double>(s));
    report.echo("epsilon", epsilon);
    report.echo("delta", delta);
    report.echo("n", static_cast<double>(n));
    report.echo("seeds", static_cast<double>(seeds));
    report.echo("grid_points", static_cast<double>(grid_points));
    report.echo("stair_decay", stair_decay);
    report.columns = {"t", "f_true", "f_std", "f_aug", "f_rst"};

    std::vector<double> e_std, e_aug, e_rst;
    SplineSeedRun first_run{};
    for (int t = 0; t < seeds; ++t) {
        SplineSeedRun run = run_spline_seed(problem, pop, n, seed, static_cast<std::uint64_t>(t));
        if (t == 0) first_run = run;
        e_std.push_back(run.err_std);
        e_aug.push_back(run.err_aug);
        e_rst.push_back(run.err_rst);
    }

    double lo = problem.basis.domain_min(), hi = problem.basis.domain_max();
    for (int g = 0; g < grid_points; ++g) {
        double t = lo + (hi - lo) * g / (grid_points - 1);
        report.rows.push_back({t, problem.f_star(t), spline_predict(problem, first_run.est_std.theta, t),
                               spline_predict(problem, first_run.est_aug.theta, t),
                               spline_predict(problem, first_run.rst.theta, t)});
    }

    double med_std = median(e_std), med_aug = median(e_aug), med_rst = median(e_rst);
    report.add_summary("median_err_std", med_std);
    report.add_summary("median_err_aug", med_aug);
    report.add_summary("median_err_rst", med_rst);
    report.add_check("augmentation_hurts_at_median", med_aug > med_std);
    report.add_check("rst_at_most_both_medians", med_rst <= med_std && med_rst <= med_aug);
    report.wall_seconds = timer.seconds();
    return report;
}

}  // namespace

const std::vector<ExperimentInfo>& registry() {
    static const std::vector<ExperimentInfo> experiments = {
        {"spline-sample-size",
         "Mean augmentation gap of the spline staircase versus sample size",
         {{"s", "stair count", "10"},
          {"epsilon", "plateau width", "0.1"},
          {"delta", "perturbation probability", "0.1"},
          {"n_list", "sample sizes", "[22,50,100,250,500,1000]"},
          {"trials", "datasets per sample size", "25"}}},
        {"spline-interval-ratio",
         "Ratio of augmented to standard error with interval constraints on the delta(s), gamma(s) schedules",
         {{"s_list", "stair counts (even)", "[4,8,16,32]"},
          {"c", "gamma = c / s constant, in [0,1)", "0.5"},
          {"mc_trials", "Monte-Carlo fits per conditional error", "1000"}}},
        {"l1-ratio",
         "Minimum-l1 repeated-block counterexample: analytic bound and LP Monte-Carlo",
         {{"d_list", "block repeat counts", "[10,50,100,500]"},
          {"gamma", "sample ratio n = gamma d", "2"},
          {"mc_trials", "LP Monte-Carlo trials (d <= 12 only)", "200"},
          {"delta", "block parameter", "0.5"}}},
        {"safe-region",
         "Single-augmentation direction scan in the nullspace plane of the 3D instance",
         {{"n_angles", "grid size (multiple of 4)", "120"},
          {"lambdas", "sigma diagonal", "[1,4,1]"},
          {"theta_star", "true parameter", "[1,0,5]"}}},
        {"rst-spline",
         "Per-seed standard/augmented/RST spline errors with the no-tradeoff checks",
         {{"s", "stair count", "10"},
          {"epsilon", "plateau width", "0.1"},
          {"delta", "perturbation probability", "0.1"},
          {"n", "training points per seed", "22"},
          {"seeds", "number of seeded datasets", "25"},
          {"stair_decay", "stair mass ratio (1 = uniform)", "0.65"}}},
        {"fig2",
         "Dense prediction dump (standard, augmented, RST) plus error medians",
         {{"s", "stair count", "10"},
          {"epsilon", "plateau width", "0.1"},
          {"delta", "perturbation probability", "0.1"},
          {"n", "training points per seed", "22"},
          {"seeds", "number of seeded datasets", "25"},
          {"grid_points", "prediction grid resolution", "400"},
          {"stair_decay", "stair mass ratio (1 = uniform)", "0.65"}}},
    };
    return experiments;
}

void ExperimentConfig::validate() const {
    if (!seed_set) throw std::invalid_argument("a seed is required (--seed or config key 'seed')");
    bool known = false;
    for (const auto& info : registry())
        if (info.name == experiment) known = true;
    if (!known) throw std::invalid_argument("unknown experiment '" + experiment + "'");
    if (format != "csv" && format != "json" && format != "both")
        throw std::invalid_argument("format must be csv, json or both");
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw std::invalid_argument("config parse error: " + std::string(e.what()));
    }
    if (!j.is_object()) throw std::invalid_argument("config root must be an object");

    ExperimentConfig config;
    for (const auto& [key, value] : j.items()) {
        if (key == "experiment") {
            config.experiment = value.get<std::string>();
        } else if (key == "seed") {
            if (!value.is_number_unsigned()) throw std::invalid_argument("config key 'seed' must be unsigned");
            config.seed = value.get<std::uint64_t>();
            config.seed_set = true;
        } else if (key == "out_dir") {
            config.out_dir = value.get<std::string>();
        } else if (key == "format") {
            config.format = value.get<std::string>();
        } else if (key == "params") {
            if (!value.is_object()) throw std::invalid_argument("config key 'params' must be an object");
            for (const auto& [pk, pv] : value.items()) config.params[pk] = pv.dump();
        } else {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    return config;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    const ExperimentInfo* info = nullptr;
    for (const auto& e : registry())
        if (e.name == config.experiment) info = &e;
    Params params(config.params, *info);

    if (config.experiment == "spline-sample-size") return exp_spline_sample_size(params, config.seed);
    if (config.experiment == "spline-interval-ratio") return exp_spline_interval_ratio(params, config.seed);
    if (config.experiment == "l1-ratio") return exp_l1_ratio(params, config.seed);
    if (config.experiment == "safe-region") return exp_safe_region(params, config.seed);
    if (config.experiment == "rst-spline") return exp_rst_spline(params, config.seed);
    if (config.experiment == "fig2") return exp_fig2(params, config.seed);
    throw std::invalid_argument("unknown experiment '" + config.experiment + "'");
}

}  // namespace auglab::experiments
