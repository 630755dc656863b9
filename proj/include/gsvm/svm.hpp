#pragma once

#include "gsvm/types.hpp"

namespace gsvm {

struct SvmSolution {
    Hyperplane hyperplane;
    std::vector<int> support_indices;  // points with functional margin 1 within tol
    Vector multipliers;                // KKT multipliers, zero off the certifying subset
    double objective = 0.0;            // 0.5 * ||w||^2
    double norm_w = 0.0;
};

// Hard-margin trainer: min 0.5||w||^2  s.t.  y_i(<w, x_i> + b) >= 1.
//
// Searches candidate active subsets of size 2..dim+1 in deterministic order
// and solves each equality-restricted problem through the bordered dual Gram
// system; the first subset whose multipliers are nonnegative and whose
// solution is feasible on every point is the global optimum (KKT sufficiency
// for a convex problem). Exact duplicates are merged first; a duplicated x
// carrying both labels is an immediate infeasibility certificate.
//
// Throws Error("single_class") / Error("infeasible") / Error("dimension_mismatch").
SvmSolution svm_train(const DataSet& ds, double tol = 1e-9);

// Independent brute-force verifier. Enumerates every subset of size 2..dim+1,
// solves the primal bordered KKT system directly, filters by primal
// feasibility and dual nonnegativity, and returns the feasible candidate with
// the smallest objective. Bounded to <= 12 points and dim <= 4.
SvmSolution svm_oracle(const DataSet& ds, double tol = 1e-9);

}  // namespace gsvm
