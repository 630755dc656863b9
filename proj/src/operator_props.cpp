#include "gsvm/operator_props.hpp"

#include "gsvm/rng.hpp"

#include <algorithm>
#include <limits>

namespace gsvm {
namespace {

constexpr double kSlack = 1e-12;

// Sampled pairs live in [-10, 10]^n with a minimum separation of 0.1: the
// checked inequalities are scale-free, and near-coincident pairs would turn
// the ratio estimates into pure cancellation noise.
std::pair<Vector, Vector> sample_pair(SplitMix64& rng, Index n) {
    const Vector x = rng.uniform_vector(n, -10.0, 10.0);
    Vector y = rng.uniform_vector(n, -10.0, 10.0);
    while ((x - y).norm() < 0.1) y = rng.uniform_vector(n, -10.0, 10.0);
    return {x, y};
}

void require_pairs(int pairs) {
    if (pairs < 1) fail("invalid_argument", "at least one sampled pair is required");
}

}  // namespace

PropertyReport check_lipschitz(const OperatorHandle& op, double L, int pairs,
                               std::uint64_t seed) {
    require_pairs(pairs);
    if (L <= 0.0) fail("invalid_argument", "Lipschitz candidate must be positive");

    PropertyReport report;
    report.property = OperatorProperty::lipschitz;
    report.holds = true;

    SplitMix64 rng(seed);
    double max_ratio = 0.0;
    std::pair<Vector, Vector> worst;
    for (int s = 0; s < pairs; ++s) {
        auto [x, y] = sample_pair(rng, op.dim);
        const double ratio = (op.eval(x) - op.eval(y)).norm() / (x - y).norm();
        if (ratio > max_ratio || s == 0) {
            max_ratio = ratio;
            worst = {x, y};
        }
    }
    report.estimate = max_ratio;
    if (max_ratio > L + kSlack) {
        report.holds = false;
        report.witness = worst;
    }
    return report;
}

PropertyReport check_monotone(const OperatorHandle& op, int pairs, std::uint64_t seed,
                              bool strict) {
    require_pairs(pairs);

    PropertyReport report;
    report.property = strict ? OperatorProperty::strictly_monotone : OperatorProperty::monotone;
    report.holds = true;

    SplitMix64 rng(seed);
    double min_modulus = std::numeric_limits<double>::infinity();
    for (int s = 0; s < pairs; ++s) {
        auto [x, y] = sample_pair(rng, op.dim);
        const Vector dx = x - y;
        const double inner = (op.eval(x) - op.eval(y)).dot(dx);
        min_modulus = std::min(min_modulus, inner / dx.squaredNorm());
        const bool ok = strict ? inner > kSlack : inner >= 0.0;
        if (!ok && report.holds) {
            report.holds = false;
            report.witness = {x, y};
        }
    }
    report.estimate = min_modulus;
    return report;
}

PropertyReport check_strongly_monotone(const OperatorHandle& op, double alpha, int pairs,
                                       std::uint64_t seed) {
    require_pairs(pairs);
    if (alpha <= 0.0) fail("invalid_argument", "alpha must be positive");

    PropertyReport report;
    report.property = OperatorProperty::strongly_monotone;
    report.holds = true;

    SplitMix64 rng(seed);
    double min_modulus = std::numeric_limits<double>::infinity();
    for (int s = 0; s < pairs; ++s) {
        auto [x, y] = sample_pair(rng, op.dim);
        const Vector dx = x - y;
        const double inner = (op.eval(x) - op.eval(y)).dot(dx);
        min_modulus = std::min(min_modulus, inner / dx.squaredNorm());
        if (inner < alpha * dx.squaredNorm() - kSlack && report.holds) {
            report.holds = false;
            report.witness = {x, y};
        }
    }
    report.estimate = min_modulus;
    return report;
}

bool class_hierarchy_check(const OperatorHandle& op, double alpha, int pairs,
                           std::uint64_t seed) {
    const PropertyReport strong = check_strongly_monotone(op, alpha, pairs, seed);
    const PropertyReport strict = check_monotone(op, pairs, seed, /*strict=*/true);
    const PropertyReport mono = check_monotone(op, pairs, seed, /*strict=*/false);
    const bool strong_implies_strict = !strong.holds || strict.holds;
    const bool strict_implies_mono = !strict.holds || mono.holds;
    return strong_implies_strict && strict_implies_mono;
}

}  // namespace gsvm
