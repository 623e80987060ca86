#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "auglab/estimators.hpp"
#include "auglab/types.hpp"

namespace auglab {

/// Repeated-block construction where augmentation hurts minimum-l1
/// interpolation: three 3d-dimensional support points built by repeating
/// [1+delta,1,0], [0,1,1+delta], [1+delta,0,1] d times, theta* all-ones.
struct L1Problem {
    int block_repeats = 1;  // d
    double delta = 0.5;
    double p = 0.0;    // probability mass of x3 + x2
    double eps = 0.0;  // probability mass of x2

    /// Defaults p = 1/d^2, eps = 1/d^3.
    static L1Problem create(int block_repeats, double delta = 0.5);
    static L1Problem create(int block_repeats, double delta, double p, double eps);

    Index dim() const { return 3 * block_repeats; }
    Vector x1() const;
    Vector x2() const;
    Vector x3() const;
};

struct L1Instance {
    DiscreteDomain domain;  // {x1 w.p. 1-p, x2 w.p. eps, x3 w.p. p-eps}; T(x1)=T(x2)={x1,x2}, T(x3)={x3}
    PopulationModel model;  // theta* = ones, sigma = 3-point covariance
};

L1Instance build_domain(const L1Problem& problem);

/// Closed-form standard and augmented estimators conditioned on the all-x1
/// event: per block [(2+d)/(1+d), 0, 0] and [0, 2+d, 0].
std::pair<Estimator, Estimator> conditional_estimators_E1(const L1Problem& problem);

/// Analytic conditional standard errors (eps d^2 (2+d)^2, (p-eps) d^2 (2+d)^2).
std::pair<double, double> conditional_errors_E1(const L1Problem& problem);

struct L1RatioRow {
    int d = 0;
    double analytic_bound = 0.0;   // (1-p)^n (p-eps)/eps
    double empirical_ratio = 0.0;  // MC mean L(aug) / MC mean L(std), 0 when skipped
    double ratio_se = 0.0;         // delta-method standard error of the ratio
    int mc_trials = 0;
};

/// Analytic lower-bound path for every d; full LP Monte-Carlo at d <= 12.
std::vector<L1RatioRow> ratio_experiment(const std::vector<int>& d_list, double n_ratio_gamma,
                                         std::uint64_t seed, int mc_trials = 200, double delta = 0.5);

}  // namespace auglab
