#pragma once

#include "gsvm/types.hpp"

#include <optional>

namespace gsvm {

// Matrix-valued decision map F(x) = W x + B with square W; rows w_i play the
// role the single weight vector plays classically.
struct GsvmModel {
    Matrix W;
    Vector B;
};

// The label convention for the matrix model: the scalar label expanded to an
// n-vector with every component equal to that label.
struct LabelVector {
    Vector values;

    static LabelVector for_label(int y, Index n) {
        if (y != 1 && y != -1) fail("invalid_argument", "label must be +1 or -1");
        if (n < 1) fail("invalid_argument", "label vector needs positive dimension");
        return LabelVector{Vector::Constant(n, static_cast<double>(y))};
    }
};

// Componentwise slack eta = y ⊙ (W x + B) - 1. Points trained as equality
// supports sit exactly at eta = 0, so `feasible` (strict positivity) is false
// there; callers wanting the weak form test eta >= 0 themselves.
struct GsvmMargin {
    Vector eta;
    bool feasible = false;
};

struct GsvmTrainResult {
    GsvmModel model;
    double residual = 0.0;          // least-squares residual of the equality system
    bool rank_deficient = false;    // multiple solutions; minimum-norm one returned
    std::vector<int> active_indices;
};

// W x + B
Vector control_apply(const GsvmModel& m, const Vector& x);

GsvmMargin gsvm_margin(const GsvmModel& m, const LabeledPoint& p);

// The norm map: every component equals ||w_i||. Zero rows are allowed.
Vector g_value(const Vector& w_i);

// Gradient of w -> ||w||, i.e. w / ||w||; undefined at the origin.
Vector g_gradient(const Vector& w_i);

// Trains by solving the margin-equality system y_k(<w, x_k> + b) = 1 row-wise
// over the active points (all points by default). Every row of W faces the
// identical scalar system, so the returned W has equal rows by construction.
// Overdetermined systems are solved by least squares and rejected when the
// residual exceeds tol; rank-deficient systems return the minimum-norm
// solution with rank_deficient set.
GsvmTrainResult gsvm_train(const DataSet& ds, double tol = 1e-9);

// Same, with an explicit support set; indices not listed are treated as
// interior points and do not constrain the solve.
GsvmTrainResult gsvm_train_active(const DataSet& ds, const std::vector<int>& active,
                                  double tol = 1e-9);

// Componentwise minimum of g_value over the rows of W.
Vector gsvm_objective_min(const GsvmModel& m);

// Collapses an equal-row model to the classical hyperplane (row, b).
Hyperplane gsvm_row_solution(const GsvmModel& m, double tol = 1e-9);

}  // namespace gsvm
