#include "auglab/l1lab.hpp"

#include <cmath>
#include <set>

#include "auglab/rng.hpp"

namespace auglab {

namespace {

Vector repeat_block(double a, double b, double c, int d) {
    Vector v(3 * d);
    for (int k = 0; k < d; ++k) {
        v[3 * k] = a;
        v[3 * k + 1] = b;
        v[3 * k + 2] = c;
    }
    return v;
}

}  // namespace

L1Problem L1Problem::create(int block_repeats, double delta) {
    double d = static_cast<double>(block_repeats);
    return create(block_repeats, delta, 1.0 / (d * d), 1.0 / (d * d * d));
}

L1Problem L1Problem::create(int block_repeats, double delta, double p, double eps) {
    if (block_repeats < 1) throw std::invalid_argument("L1Problem: block_repeats must be >= 1");
    if (!(delta > 0.0) || !(delta < 1.0)) throw std::invalid_argument("L1Problem: delta must lie in (0,1)");
    if (!(eps > 0.0) || !(eps < p) || !(p < 1.0))
        throw std::invalid_argument("L1Problem: need 0 < eps < p < 1");
    L1Problem problem;
    problem.block_repeats = block_repeats;
    problem.delta = delta;
    problem.p = p;
    problem.eps = eps;
    return problem;
}

Vector L1Problem::x1() const { return repeat_block(1.0 + delta, 1.0, 0.0, block_repeats); }
Vector L1Problem::x2() const { return repeat_block(0.0, 1.0, 1.0 + delta, block_repeats); }
Vector L1Problem::x3() const { return repeat_block(1.0 + delta, 0.0, 1.0, block_repeats); }

L1Instance build_domain(const L1Problem& problem) {
    L1Instance inst;
    inst.domain.points = {problem.x1(), problem.x2(), problem.x3()};
    inst.domain.probs = {1.0 - problem.p, problem.eps, problem.p - problem.eps};
    inst.domain.perturbation_sets = {{0, 1}, {0, 1}, {2}};
    inst.domain.validate();

    const Index dim = problem.dim();
    Matrix sigma = Matrix::Zero(dim, dim);
    for (size_t i = 0; i < inst.domain.points.size(); ++i)
        sigma.noalias() += inst.domain.probs[i] * (inst.domain.points[i] * inst.domain.points[i].transpose());
    inst.model = PopulationModel{Vector::Ones(dim), sigma};
    inst.model.validate();
    return inst;
}

std::pair<Estimator, Estimator> conditional_estimators_E1(const L1Problem& problem) {
    double target = 2.0 + problem.delta;
    Vector theta_std = repeat_block(target / (1.0 + problem.delta), 0.0, 0.0, problem.block_repeats);
    Vector theta_aug = repeat_block(0.0, target, 0.0, problem.block_repeats);
    Estimator est_std{theta_std, NormKind::l1, 0.0, theta_std.lpNorm<1>()};
    Estimator est_aug{theta_aug, NormKind::l1, 0.0, theta_aug.lpNorm<1>()};
    return {est_std, est_aug};
}

std::pair<double, double> conditional_errors_E1(const L1Problem& problem) {
    double d = static_cast<double>(problem.block_repeats);
    double target_sq = d * d * (2.0 + problem.delta) * (2.0 + problem.delta);
    return {problem.eps * target_sq, (problem.p - problem.eps) * target_sq};
}

std::vector<L1RatioRow> ratio_experiment(const std::vector<int>& d_list, double n_ratio_gamma,
                                         std::uint64_t seed, int mc_trials, double delta) {
    if (d_list.empty()) throw std::invalid_argument("ratio_experiment: d_list must be non-empty");
    if (!(n_ratio_gamma > 0.0)) throw std::invalid_argument("ratio_experiment: n_ratio_gamma must be positive");

    std::vector<L1RatioRow> rows;
    rows.reserve(d_list.size());
    for (size_t di = 0; di < d_list.size(); ++di) {
        int d = d_list[di];
        L1Problem problem = L1Problem::create(d, delta);
        int n = std::max(1, static_cast<int>(std::lround(n_ratio_gamma * d)));

        L1RatioRow row;
        row.d = d;
        row.analytic_bound =
            std::pow(1.0 - problem.p, n) * (problem.p - problem.eps) / problem.eps;

        if (d <= 12) {
            L1Instance inst = build_domain(problem);
            Vector probs(3);
            probs << inst.domain.probs[0], inst.domain.probs[1], inst.domain.probs[2];
            std::vector<double> per_std, per_aug;
            per_std.reserve(static_cast<size_t>(mc_trials));
            per_aug.reserve(static_cast<size_t>(mc_trials));
            for (int trial = 0; trial < mc_trials; ++trial) {
                Rng rng(derive_seed(seed, (di << 24) | static_cast<std::uint64_t>(trial)));
                std::vector<int> draws(static_cast<size_t>(n));
                std::set<int> support;
                for (int k = 0; k < n; ++k) {
                    draws[static_cast<size_t>(k)] = rng.categorical(probs);
                    support.insert(draws[static_cast<size_t>(k)]);
                }
                double target = static_cast<double>(d) * (2.0 + delta);

                Matrix x_std(n, problem.dim());
                for (int k = 0; k < n; ++k)
                    x_std.row(k) = inst.domain.points[static_cast<size_t>(draws[static_cast<size_t>(k)])].transpose();
                Vector y_std = Vector::Constant(n, target);

                // Augment with every consistent perturbation of the sampled
                // support: x1 <-> x2; x3 only perturbs to itself.
                std::vector<int> extra_idx;
                if (support.count(0) && !support.count(1)) extra_idx.push_back(1);
                if (support.count(1) && !support.count(0)) extra_idx.push_back(0);

                LabeledData data{x_std, y_std};
                Estimator est_std = l1_fit(data);
                Estimator est_aug;
                if (extra_idx.empty()) {
                    est_aug = est_std;
                } else {
                    Matrix x_ext(static_cast<Index>(extra_idx.size()), problem.dim());
                    for (size_t k = 0; k < extra_idx.size(); ++k)
                        x_ext.row(static_cast<Index>(k)) =
                            inst.domain.points[static_cast<size_t>(extra_idx[k])].transpose();
                    Vector y_ext = Vector::Constant(static_cast<Index>(extra_idx.size()), target);
                    est_aug = l1_fit(data, ExtraData{x_ext, y_ext});
                }
                per_std.push_back(standard_error(est_std.theta, inst.model));
                per_aug.push_back(standard_error(est_aug.theta, inst.model));
            }
            double mean_std = 0.0, mean_aug = 0.0;
            for (int t = 0; t < mc_trials; ++t) {
                mean_std += per_std[static_cast<size_t>(t)];
                mean_aug += per_aug[static_cast<size_t>(t)];
            }
            mean_std /= mc_trials;
            mean_aug /= mc_trials;
            row.empirical_ratio = mean_aug / mean_std;
            row.mc_trials = mc_trials;

            // Delta-method standard error of the ratio of means.
            double va = 0.0, vb = 0.0, cab = 0.0;
            for (int t = 0; t < mc_trials; ++t) {
                double da = per_aug[static_cast<size_t>(t)] - mean_aug;
                double db = per_std[static_cast<size_t>(t)] - mean_std;
                va += da * da;
                vb += db * db;
                cab += da * db;
            }
            double denom = static_cast<double>(mc_trials) * std::max(1, mc_trials - 1);
            va /= denom;
            vb /= denom;
            cab /= denom;
            double r = row.empirical_ratio;
            double var_ratio = (va - 2.0 * r * cab + r * r * vb) / (mean_std * mean_std);
            row.ratio_se = std::sqrt(std::max(0.0, var_ratio));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace auglab
