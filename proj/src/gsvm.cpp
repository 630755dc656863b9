#include "gsvm/gsvm.hpp"

#include <algorithm>
#include <sstream>

namespace gsvm {

Vector control_apply(const GsvmModel& m, const Vector& x) {
    require_same_dim(m.W.cols(), x.size(), "control_apply");
    return m.W * x + m.B;
}

GsvmMargin gsvm_margin(const GsvmModel& m, const LabeledPoint& p) {
    const Vector fx = control_apply(m, p.x);
    GsvmMargin out;
    out.eta = static_cast<double>(p.y) * fx - Vector::Ones(fx.size());
    out.feasible = (out.eta.array() > 0.0).all();
    return out;
}

Vector g_value(const Vector& w_i) {
    return Vector::Constant(w_i.size(), w_i.norm());
}

Vector g_gradient(const Vector& w_i) {
    const double norm = w_i.norm();
    if (norm == 0.0) fail("singular", "norm map is not differentiable at the origin");
    return w_i / norm;
}

GsvmTrainResult gsvm_train(const DataSet& ds, double tol) {
    std::vector<int> all(ds.size());
    for (int i = 0; i < static_cast<int>(ds.size()); ++i) all[i] = i;
    return gsvm_train_active(ds, all, tol);
}

GsvmTrainResult gsvm_train_active(const DataSet& ds, const std::vector<int>& active,
                                  double tol) {
    if (!ds.has_both_classes()) {
        fail("single_class", "training requires at least one point of each label");
    }
    if (active.empty()) fail("invalid_argument", "active point set is empty");
    for (int idx : active) {
        if (idx < 0 || idx >= static_cast<int>(ds.size())) {
            fail("invalid_argument", "active index " + std::to_string(idx) + " out of range");
        }
    }

    // y_k(<w, x_k> + b) = 1 with y_k = ±1 is <w, x_k> + b = y_k; one shared
    // scalar system for every row.
    const int n = static_cast<int>(ds.dim);
    const int rows = static_cast<int>(active.size());
    Matrix M(rows, n + 1);
    Vector rhs(rows);
    for (int r = 0; r < rows; ++r) {
        const auto& p = ds.points[active[r]];
        M.block(r, 0, 1, n) = p.x.transpose();
        M(r, n) = 1.0;
        rhs[r] = static_cast<double>(p.y);
    }

    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(M);
    const Vector sol = cod.solve(rhs);
    const double residual = (M * sol - rhs).norm();
    if (residual > tol) {
        std::ostringstream os;
        os << "margin-equality system is inconsistent: residual " << residual
           << " exceeds tolerance " << tol;
        fail("inconsistent_system", os.str());
    }

    GsvmTrainResult out;
    out.model.W = sol.head(n).transpose().replicate(n, 1);
    out.model.B = Vector::Constant(n, sol[n]);
    out.residual = residual;
    out.rank_deficient = cod.rank() < n + 1;
    out.active_indices = active;
    return out;
}

Vector gsvm_objective_min(const GsvmModel& m) {
    if (m.W.rows() == 0) fail("invalid_argument", "model has no rows");
    double min_norm = m.W.row(0).norm();
    for (Index i = 1; i < m.W.rows(); ++i) min_norm = std::min(min_norm, m.W.row(i).norm());
    return Vector::Constant(m.W.cols(), min_norm);
}

Hyperplane gsvm_row_solution(const GsvmModel& m, double tol) {
    if (m.W.rows() == 0) fail("invalid_argument", "model has no rows");
    require_same_dim(m.W.rows(), m.B.size(), "gsvm_row_solution");
    for (Index i = 1; i < m.W.rows(); ++i) {
        if ((m.W.row(i) - m.W.row(0)).cwiseAbs().maxCoeff() > tol ||
            std::abs(m.B[i] - m.B[0]) > tol) {
            fail("rows_not_equal",
                 "rows differ beyond tolerance; model does not collapse to one hyperplane");
        }
    }
    return Hyperplane{m.W.row(0).transpose(), m.B[0]};
}

}  // namespace gsvm
