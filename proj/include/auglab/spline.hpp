#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "auglab/estimators.hpp"
#include "auglab/linalg.hpp"
#include "auglab/rst.hpp"
#include "auglab/types.hpp"

namespace auglab {

/// Clamped cubic B-spline basis on a non-decreasing breakpoint sequence
/// (boundary knots repeated to multiplicity 4). A breakpoint of multiplicity k
/// reduces continuity there to C^(3-k). dim = #breakpoints + 2.
class SplineBasis {
public:
    static SplineBasis clamped_cubic(std::vector<double> breakpoints);

    Index dim() const { return dim_; }
    double domain_min() const { return knots_[3]; }
    double domain_max() const { return knots_[knots_.size() - 4]; }
    const std::vector<double>& knots() const { return knots_; }

    /// Basis values at t (at most 4 nonzero, nonnegative, summing to 1).
    /// Throws std::domain_error outside [domain_min, domain_max].
    Vector features(double t) const;

    /// order-th derivative of every basis function at t (order 1 or 2).
    Vector derivative_features(double t, int order) const;

    /// Greville abscissae (knot averages); coefficients equal to these
    /// reproduce the identity function.
    Vector greville_abscissae() const;

private:
    std::vector<double> knots_;
    Index dim_ = 0;

    int find_span(double t) const;
    void eval_all(int span, double t, int nderiv, double out[3][4]) const;
};

/// Gram matrix of second derivatives: M_ij = integral of B_i'' B_j''.
/// Piecewise-quadratic integrand, integrated exactly with 2-point Gauss per
/// knot interval.
Matrix penalty_matrix(const SplineBasis& basis);

/// Staircase regression setup: domain {i, i+eps}, true function floor(t),
/// stairs drawn from stair_probs with each draw perturbed to i+eps with
/// probability delta.
struct StaircaseProblem {
    int stairs = 0;
    double epsilon = 0.1;
    double delta = 0.1;
    Vector stair_probs;  // dim = stairs, sums to 1
    SplineBasis basis;
    Matrix penalty;
    linalg::SymRootInv roots;  // cached (M + shift)^{+-1/2}
    ToleranceConfig tol;       // module policy: psd_shift tightened to 1e-14

    /// knot_multiplicity 1 gives the C2 staircase basis; 2 allows curvature
    /// jumps at plateau endpoints (used by the interval-augmentation study).
    static StaircaseProblem create(int stairs, double epsilon = 0.1, double delta = 0.1,
                                   std::optional<Vector> stair_probs = std::nullopt,
                                   int knot_multiplicity = 1);

    Index dim() const { return basis.dim(); }
    std::vector<double> domain_points() const;  // {0, eps, 1, 1+eps, ...}, 2*stairs values
    double f_star(double t) const;              // floor(t)
    double point_prob(int domain_index) const;  // sampling mass of the domain point
};

struct StaircaseSample {
    LabeledData data;
    std::vector<double> ts;  // raw inputs alongside the feature rows
};

StaircaseSample sample_staircase(const StaircaseProblem& problem, int n, std::uint64_t seed);

struct AugmentationSample {
    ExtraData data;
    std::vector<double> ts;
};

/// One augmentation per training point, drawn uniformly from
/// {floor(t), floor(t)+eps}, keeping the original target.
AugmentationSample sample_augmentations(const std::vector<double>& ts, const StaircaseProblem& problem,
                                        std::uint64_t seed);

/// Minimum curvature-norm interpolant (m_norm_fit with the penalty matrix).
Estimator spline_fit(const LabeledData& data, const std::optional<ExtraData>& extra,
                     const StaircaseProblem& problem);

enum class DomainWeighting { sampling, uniform };

/// Exact discrete population: raw and rotated covariances, an interpolating
/// theta*, and the domain with per-stair perturbation sets.
struct SplinePopulation {
    PopulationModel raw;      // feature coordinates
    PopulationModel rotated;  // coordinates where the curvature norm is Euclidean
    DiscreteDomain domain;    // raw feature points
    std::vector<double> ts;
};

SplinePopulation population_covariance(const StaircaseProblem& problem,
                                       DomainWeighting weighting = DomainWeighting::sampling);

/// Eigen-structure of the rotated covariance in the exact zero-ridge limit:
/// the dominant pair q1, q2 spans the penalty nullspace (linear functions),
/// the rest are eigenvectors of the pinv-root-rotated covariance on its
/// complement. projector maps onto {P q3, P q_2s} with P the nullspace
/// projector of the limit rotated standard data.
struct LocalGlobalProjection {
    Vector eigenvalues;      // descending, the 2*stairs nonzero-candidate ones
    Matrix eigenvectors;     // matching columns, rotated coordinates
    Matrix projector;        // 2 x dim, orthonormal rows
    Vector theta_star_proj;  // projector * rotated theta*
    double q1_residual = 0.0;
    double q2_residual = 0.0;
    bool degenerate = false;  // eigen-gap too small to identify q3 / q_2s stably

    Vector project(const Vector& rotated_vec) const { return projector * rotated_vec; }
};

LocalGlobalProjection local_global_analysis(const StaircaseProblem& problem, const Matrix& x_std_raw);

/// Robust self-training on the staircase: pseudo-labels from the standard
/// spline fit, perturbation span from all per-stair feature differences,
/// sigma-weighted projection in feature coordinates.
RSTSolution rst_spline(const StaircaseSample& sample, const StaircaseProblem& problem);

/// Prediction of theta at input t.
double spline_predict(const StaircaseProblem& problem, const Vector& theta, double t);

struct SampleSizeRow {
    int n = 0;
    double mean_gap = 0.0;  // mean of L_std(aug) - L_std(std)
    double std_gap = 0.0;
    int full_support_trials = 0;  // trials whose standard sample visited all 2s points
    double mean_gap_full_support = 0.0;
};

std::vector<SampleSizeRow> sample_size_sweep(const StaircaseProblem& problem, const std::vector<int>& n_list,
                                             int trials, std::uint64_t seed);

struct IntervalRatioRow {
    int s = 0;
    double delta = 0.0;
    double gamma = 0.0;
    int n = 0;
    double p_e1 = 0.0;            // all stairs in the lower half
    double p_e2 = 0.0;            // no perturbed draw
    double r_aug_e1 = 0.0;        // MC mean of R(aug | E1)
    double r_std_e2 = 0.0;        // MC mean of R(std | E2)
    double r_std_e2_line = 0.0;   // same, conditioned on >= 2 distinct stairs
    double r_std_one_pert = 0.0;  // MC mean of R(std | exactly one perturbed draw)
    double r_aug_lower = 0.0;     // P(E1) * R(aug | E1)
    double r_std_total = 0.0;     // P(E2) R(std|E2) + (1 - P(E2)) R(std|one perturbed)
    double ratio = 0.0;           // r_aug_lower / r_std_total
    int flat_violations = 0;      // E1 trials whose tail derivative energy exceeded 1e-6
};

/// Interval-augmentation staircase: continuous plateaus [i, i+eps], skewed
/// stair distribution (1-gamma on the lower half), with the schedules
/// delta = (log s^7 - log(s^7-1))/s, gamma = c/s, n = s.
/// Interval constraints are imposed as value equality at both endpoints plus a
/// zero first derivative at the left endpoint. Event probabilities are
/// analytic; conditional errors are Monte-Carlo means of exact-quadrature
/// population errors.
std::vector<IntervalRatioRow> interval_ratio_experiment(const std::vector<int>& s_list, double c,
                                                        std::uint64_t seed, int mc_trials = 1000);

}  // namespace auglab
