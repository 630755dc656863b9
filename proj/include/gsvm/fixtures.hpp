#pragma once

#include "gsvm/types.hpp"

#include <optional>
#include <string>

namespace gsvm {

enum class WorkedExample { ex2_2, ex2_3_s1, ex2_3_s2, ex2_3_s3, ex2_14 };

enum class Family { A, B, C };

// Parametric dataset family: cyclic zero-pattern positives built from the
// alphas, k-scaled negatives.
//   A: n points, each zeroing one coordinate (n >= 2, alpha_i != 0, k != 1)
//   B: n cyclic windows of m consecutive nonzero alphas (1 <= m < n)
//   C: n = 3 axis points at alpha_i and beta_i (beta_i >= alpha_i > 0, k > 0)
struct FamilySpec {
    Family family = Family::A;
    int n = 2;
    std::optional<int> m;
    Vector alphas;
    std::optional<Vector> betas;
    double k = -1.0;
};

// A dataset paired with its closed-form solution for golden testing.
struct GoldenCase {
    DataSet dataset;
    Vector expected_w;
    std::optional<double> expected_b;
    double expected_norm = 0.0;
    // Margin-equality support points; empty optional means every point.
    std::optional<std::vector<int>> support_indices;
    // True when every point (including interior ones) clears functional
    // margin >= 1 under the expected solution.
    bool margin_feasible = true;
    std::string note;
};

// Exact point sets and printed solutions of the worked desk examples.
GoldenCase fixture(WorkedExample id);

// Emits the family dataset with its closed-form expected solution. The
// expected offset is derived by back-substitution and validated for
// consistency across every support point.
GoldenCase gen_family(const FamilySpec& spec);

}  // namespace gsvm
