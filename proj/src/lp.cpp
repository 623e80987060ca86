#include "auglab/lp.hpp"

#include <limits>
#include <vector>

#include "auglab/errors.hpp"
#include "auglab/linalg.hpp"

namespace auglab::lp {

namespace {

constexpr double kPivotTol = 1e-9;
constexpr double kCostTol = 1e-9;
constexpr double kFeasTol = 1e-7;

// Tableau rows 0..m-1 hold B^{-1}[A | b]; row m holds reduced costs and the
// negated objective in the rhs column.
struct Tableau {
    Matrix t;
    std::vector<int> basis;
    int m, n;  // constraint rows, variable columns

    void pivot(int row, int col) {
        t.row(row) /= t(row, col);
        for (int i = 0; i <= m; ++i) {
            if (i == row) continue;
            double f = t(i, col);
            if (f != 0.0) t.row(i) -= f * t.row(row);
        }
        basis[static_cast<size_t>(row)] = col;
    }
};

// Bland's rule iteration until no negative reduced cost remains.
int run_simplex(Tableau& tab) {
    int iterations = 0;
    for (;;) {
        int entering = -1;
        for (int j = 0; j < tab.n; ++j) {
            if (tab.t(tab.m, j) < -kCostTol) {
                entering = j;
                break;
            }
        }
        if (entering < 0) return iterations;

        int leaving = -1;
        double best_ratio = 0.0;
        for (int i = 0; i < tab.m; ++i) {
            double a = tab.t(i, entering);
            if (a <= kPivotTol) continue;
            double ratio = tab.t(i, tab.n) / a;
            if (leaving < 0 || ratio < best_ratio - 1e-12 ||
                (ratio < best_ratio + 1e-12 && tab.basis[static_cast<size_t>(i)] < tab.basis[static_cast<size_t>(leaving)])) {
                leaving = i;
                best_ratio = ratio;
            }
        }
        if (leaving < 0) throw NumericFailure("simplex: objective is unbounded below");
        tab.pivot(leaving, entering);
        ++iterations;
    }
}

}  // namespace

LpSolution solve_standard_form(const Matrix& a, const Vector& b, const Vector& c) {
    require_finite(a, "lp constraint matrix");
    require_finite(b, "lp rhs");
    require_finite(c, "lp costs");
    if (a.rows() != b.size() || a.cols() != c.size())
        throw std::invalid_argument("solve_standard_form: dimension mismatch");

    const int m = static_cast<int>(a.rows());
    const int n = static_cast<int>(a.cols());

    // Phase 1: artificial basis, minimize the sum of artificials.
    Tableau tab;
    tab.m = m;
    tab.n = n + m;
    tab.t = Matrix::Zero(m + 1, tab.n + 1);
    tab.basis.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        double sign = b[i] < 0.0 ? -1.0 : 1.0;
        tab.t.block(i, 0, 1, n) = sign * a.row(i);
        tab.t(i, n + i) = 1.0;
        tab.t(i, tab.n) = sign * b[i];
        tab.basis[static_cast<size_t>(i)] = n + i;
    }
    for (int j = n; j < tab.n; ++j) tab.t(m, j) = 1.0;
    for (int i = 0; i < m; ++i) tab.t.row(m) -= tab.t.row(i);  // price out the artificial basis

    int iters = run_simplex(tab);
    double phase1 = -tab.t(m, tab.n);
    if (phase1 > kFeasTol) throw InfeasibleError("lp: constraints are infeasible");

    // Drive remaining artificials out of the basis; rows that cannot pivot are
    // redundant constraints and get neutralized.
    std::vector<bool> drop_row(static_cast<size_t>(m), false);
    for (int i = 0; i < m; ++i) {
        if (tab.basis[static_cast<size_t>(i)] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j) {
            if (std::abs(tab.t(i, j)) > kPivotTol) {
                col = j;
                break;
            }
        }
        if (col >= 0)
            tab.pivot(i, col);
        else
            drop_row[static_cast<size_t>(i)] = true;
    }

    // Phase 2 tableau: keep structural columns only.
    Tableau t2;
    int kept = 0;
    for (int i = 0; i < m; ++i)
        if (!drop_row[static_cast<size_t>(i)]) ++kept;
    t2.m = kept;
    t2.n = n;
    t2.t = Matrix::Zero(kept + 1, n + 1);
    t2.basis.resize(static_cast<size_t>(kept));
    int r = 0;
    for (int i = 0; i < m; ++i) {
        if (drop_row[static_cast<size_t>(i)]) continue;
        t2.t.block(r, 0, 1, n) = tab.t.block(i, 0, 1, n);
        t2.t(r, n) = tab.t(i, tab.n);
        t2.basis[static_cast<size_t>(r)] = tab.basis[static_cast<size_t>(i)];
        ++r;
    }
    for (int j = 0; j < n; ++j) t2.t(t2.m, j) = c[j];
    for (int i = 0; i < t2.m; ++i) {
        double cb = c[t2.basis[static_cast<size_t>(i)]];
        if (cb != 0.0) t2.t.row(t2.m) -= cb * t2.t.row(i);
    }

    iters += run_simplex(t2);

    LpSolution sol;
    sol.x = Vector::Zero(n);
    for (int i = 0; i < t2.m; ++i) sol.x[t2.basis[static_cast<size_t>(i)]] = t2.t(i, n);
    sol.objective = c.dot(sol.x);
    sol.iterations = iters;
    return sol;
}

double min_l1_norm_by_enumeration(const Matrix& a, const Vector& b) {
    const int d = static_cast<int>(a.cols());
    if (d > 25) throw std::invalid_argument("min_l1_norm_by_enumeration: dimension too large to enumerate");
    const int r = static_cast<int>(linalg::numerical_rank(a));
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
        if (__builtin_popcount(mask) > r) continue;
        std::vector<int> cols;
        for (int j = 0; j < d; ++j)
            if (mask & (1u << j)) cols.push_back(j);
        Matrix sub(a.rows(), static_cast<Index>(cols.size()));
        for (size_t k = 0; k < cols.size(); ++k) sub.col(static_cast<Index>(k)) = a.col(cols[k]);
        Vector coef = linalg::pinv(sub) * b;
        if ((sub * coef - b).norm() > 1e-8 * (1.0 + b.norm())) continue;
        best = std::min(best, coef.lpNorm<1>());
    }
    if (!std::isfinite(best)) throw InfeasibleError("min_l1_norm_by_enumeration: no consistent subset");
    return best;
}

LpSolution min_l1_interpolant(const Matrix& a, const Vector& b) {
    const Index d = a.cols();
    Matrix split(a.rows(), 2 * d);
    split << a, -a;
    Vector c = Vector::Ones(2 * d);
    LpSolution lifted = solve_standard_form(split, b, c);
    LpSolution sol;
    sol.x = lifted.x.head(d) - lifted.x.tail(d);
    sol.objective = lifted.objective;
    sol.iterations = lifted.iterations;
    return sol;
}

}  // namespace auglab::lp
