#pragma once

#include "auglab/types.hpp"

namespace auglab::lp {

struct LpSolution {
    Vector x;
    double objective = 0.0;
    int iterations = 0;
};

/// min c'x subject to Ax = b, x >= 0, via a dense two-phase simplex with
/// Bland's rule (smallest-index entering, smallest-basic-index leaving), so the
/// returned vertex is deterministic. Throws InfeasibleError when no feasible
/// point exists and NumericFailure on an unbounded phase-2 ray.
LpSolution solve_standard_form(const Matrix& a, const Vector& b, const Vector& c);

/// min ||theta||_1 subject to A theta = b via the split theta = u - v, u,v >= 0.
LpSolution min_l1_interpolant(const Matrix& a, const Vector& b);

/// Independent verification route for small problems (d <= 20 or so): the
/// optimum is attained at a basic solution, so enumerate column subsets of
/// size <= rank(A) and take the best consistent one. Shares no code with the
/// simplex path.
double min_l1_norm_by_enumeration(const Matrix& a, const Vector& b);

}  // namespace auglab::lp
