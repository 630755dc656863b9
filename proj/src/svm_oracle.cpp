#include "gsvm/svm.hpp"

#include "gsvm/linear.hpp"

#include <algorithm>
#include <limits>

// Brute-force reference solver, kept deliberately separate from svm_train: it
// works in primal variables, enumerates every subset, and selects by
// objective instead of stopping at the first certificate.

namespace gsvm {
namespace {

bool advance(std::vector<int>& idx, int m) {
    const int k = static_cast<int>(idx.size());
    for (int i = k - 1; i >= 0; --i) {
        if (idx[i] < m - (k - i)) {
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

SvmSolution svm_oracle(const DataSet& ds, double tol) {
    const int m = static_cast<int>(ds.size());
    const int n = static_cast<int>(ds.dim);
    if (m > 12 || n > 4) {
        fail("enumeration_bound",
             "oracle accepts at most 12 points in dimension at most 4, got " +
                 std::to_string(m) + " points in dimension " + std::to_string(n));
    }
    if (!ds.has_both_classes()) {
        fail("single_class", "training requires at least one point of each label");
    }

    bool found = false;
    double best_objective = std::numeric_limits<double>::infinity();
    SvmSolution best;

    const int max_size = std::min(m, n + 1);
    for (int k = 2; k <= max_size; ++k) {
        std::vector<int> comb(k);
        for (int i = 0; i < k; ++i) comb[i] = i;
        do {
            // Primal KKT system for: min 0.5||w||^2  s.t.  <y_i x_i, w> + y_i b = 1
            // over the subset. Unknowns stacked as (w, b, mu).
            const int dim = n + 1 + k;
            Matrix A = Matrix::Zero(dim, dim);
            Vector rhs = Vector::Zero(dim);
            A.topLeftCorner(n, n).setIdentity();
            for (int i = 0; i < k; ++i) {
                const auto& p = ds.points[comb[i]];
                const Vector row = p.y * p.x;
                A.block(0, n + 1 + i, n, 1) = -row;
                A(n, n + 1 + i) = -static_cast<double>(p.y);
                A.block(n + 1 + i, 0, 1, n) = row.transpose();
                A(n + 1 + i, n) = static_cast<double>(p.y);
                rhs[n + 1 + i] = 1.0;
            }

            Eigen::FullPivLU<Matrix> lu(A);
            if (!lu.isInvertible()) continue;  // dependent constraints; a clean subset exists
            const Vector sol = lu.solve(rhs);

            const Vector w = sol.head(n);
            const double b = sol[n];

            bool dual_ok = true;
            for (int i = 0; i < k && dual_ok; ++i) dual_ok = sol[n + 1 + i] >= -tol;
            if (!dual_ok) continue;

            const Hyperplane h{w, b};
            bool primal_ok = true;
            for (int i = 0; i < m && primal_ok; ++i) {
                primal_ok = functional_margin(h, ds.points[i]) >= 1.0 - tol;
            }
            if (!primal_ok) continue;

            const double objective = 0.5 * w.squaredNorm();
            if (objective < best_objective - 1e-12) {
                best_objective = objective;
                best.hyperplane = h;
                best.multipliers = Vector::Zero(m);
                for (int i = 0; i < k; ++i) best.multipliers[comb[i]] = std::max(sol[n + 1 + i], 0.0);
                best.support_indices.clear();
                for (int i = 0; i < m; ++i) {
                    if (std::abs(functional_margin(h, ds.points[i]) - 1.0) <= std::max(tol, 1e-12)) {
                        best.support_indices.push_back(i);
                    }
                }
                best.objective = objective;
                best.norm_w = w.norm();
                found = true;
            }
        } while (advance(comb, m));
    }

    if (!found) fail("infeasible", "no feasible support subset found by enumeration");
    return best;
}

}  // namespace gsvm
