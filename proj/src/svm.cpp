#include "gsvm/svm.hpp"

#include "gsvm/linear.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace gsvm {
namespace {

// Next k-combination of {0..m-1} in lexicographic order; false when exhausted.
bool next_combination(std::vector<int>& idx, int m) {
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

std::string subset_to_string(const std::vector<int>& s) {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
    os << "}";
    return os.str();
}

// Indices of the first occurrence of each distinct x. A repeated x with the
// opposite label is an immediate infeasibility certificate.
std::vector<int> dedup_points(const DataSet& ds) {
    std::vector<int> reps;
    for (int i = 0; i < static_cast<int>(ds.size()); ++i) {
        const auto& pi = ds.points[i];
        bool duplicate = false;
        for (int r : reps) {
            const auto& pr = ds.points[r];
            if (pr.x == pi.x) {
                if (pr.y != pi.y) {
                    fail("infeasible",
                         "contradictory duplicate points " + std::to_string(r) + " and " +
                             std::to_string(i) + " (same x, opposite labels)");
                }
                duplicate = true;
                break;
            }
        }
        if (!duplicate) reps.push_back(i);
    }
    return reps;
}

}  // namespace

SvmSolution svm_train(const DataSet& ds, double tol) {
    if (!ds.has_both_classes()) {
        fail("single_class", "training requires at least one point of each label");
    }

    const std::vector<int> reps = dedup_points(ds);
    const int m = static_cast<int>(reps.size());
    const int n = static_cast<int>(ds.dim);
    const int max_size = std::min(m, n + 1);

    // Best near-feasible candidate, kept for the infeasibility certificate.
    double best_min_margin = -std::numeric_limits<double>::infinity();
    std::vector<int> best_subset;
    int best_violator = -1;

    for (int k = 2; k <= max_size; ++k) {
        std::vector<int> comb(k);
        for (int i = 0; i < k; ++i) comb[i] = i;
        do {
            // Bordered dual Gram system over the subset:
            //   [Q y; y^T 0] [lambda; b] = [1; 0],  Q_ij = y_i y_j <x_i, x_j>.
            Matrix A = Matrix::Zero(k + 1, k + 1);
            Vector rhs = Vector::Zero(k + 1);
            for (int i = 0; i < k; ++i) {
                const auto& pi = ds.points[reps[comb[i]]];
                for (int j = 0; j < k; ++j) {
                    const auto& pj = ds.points[reps[comb[j]]];
                    A(i, j) = pi.y * pj.y * pi.x.dot(pj.x);
                }
                A(i, k) = pi.y;
                A(k, i) = pi.y;
                rhs[i] = 1.0;
            }

            Eigen::FullPivLU<Matrix> lu(A);
            if (!lu.isInvertible()) continue;
            const Vector sol = lu.solve(rhs);

            bool dual_ok = true;
            for (int i = 0; i < k && dual_ok; ++i) dual_ok = sol[i] >= -tol;
            if (!dual_ok) continue;

            Vector w = Vector::Zero(n);
            for (int i = 0; i < k; ++i) {
                const auto& pi = ds.points[reps[comb[i]]];
                w += sol[i] * pi.y * pi.x;
            }
            const Hyperplane h{w, sol[k]};

            double min_margin = std::numeric_limits<double>::infinity();
            int violator = -1;
            for (int i = 0; i < static_cast<int>(ds.size()); ++i) {
                const double g = functional_margin(h, ds.points[i]);
                if (g < min_margin) {
                    min_margin = g;
                    violator = i;
                }
            }
            if (min_margin < 1.0 - tol) {
                if (min_margin > best_min_margin) {
                    best_min_margin = min_margin;
                    best_subset.clear();
                    for (int i = 0; i < k; ++i) best_subset.push_back(reps[comb[i]]);
                    best_violator = violator;
                }
                continue;
            }

            // KKT certificate complete: this is the unique global optimum.
            SvmSolution out;
            out.hyperplane = h;
            out.multipliers = Vector::Zero(static_cast<Index>(ds.size()));
            for (int i = 0; i < k; ++i) out.multipliers[reps[comb[i]]] = std::max(sol[i], 0.0);
            for (int i = 0; i < static_cast<int>(ds.size()); ++i) {
                const double g = functional_margin(h, ds.points[i]);
                if (std::abs(g - 1.0) <= std::max(tol, 1e-12)) out.support_indices.push_back(i);
            }
            out.norm_w = h.w.norm();
            out.objective = 0.5 * h.w.squaredNorm();
            return out;
        } while (next_combination(comb, m));
    }

    std::ostringstream os;
    os << "no candidate support subset yields a feasible maximum-margin hyperplane";
    if (!best_subset.empty()) {
        os << "; best candidate subset " << subset_to_string(best_subset) << " leaves point "
           << best_violator << " at functional margin " << best_min_margin;
    }
    fail("infeasible", os.str());
}

}  // namespace gsvm
