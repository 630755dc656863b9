#pragma once

#include "gsvm/types.hpp"
#include "gsvm/vi.hpp"

#include <optional>
#include <utility>

namespace gsvm {

enum class OperatorProperty { lipschitz, monotone, strictly_monotone, strongly_monotone };

// Result of a sampled certification run. When the property fails, `witness`
// holds a pair that violates the defining inequality on re-evaluation.
// `estimate` is the max Lipschitz ratio or the min monotonicity modulus
// <op(x)-op(y), x-y> / ||x-y||^2 seen over the sample.
struct PropertyReport {
    OperatorProperty property = OperatorProperty::monotone;
    bool holds = false;
    std::optional<std::pair<Vector, Vector>> witness;
    std::optional<double> estimate;
};

// ||op(x) - op(y)|| <= L ||x - y|| over sampled pairs.
PropertyReport check_lipschitz(const OperatorHandle& op, double L, int pairs,
                               std::uint64_t seed);

// <op(x) - op(y), x - y> >= 0 over sampled pairs (strict: > 1e-12 for x != y).
PropertyReport check_monotone(const OperatorHandle& op, int pairs, std::uint64_t seed,
                              bool strict = false);

// <op(x) - op(y), x - y> >= alpha ||x - y||^2 over sampled pairs.
PropertyReport check_strongly_monotone(const OperatorHandle& op, double alpha, int pairs,
                                       std::uint64_t seed);

// Evaluates the implication chain strongly(alpha) => strictly => monotone on
// one shared sample: whenever a stronger report holds, the weaker ones must.
bool class_hierarchy_check(const OperatorHandle& op, double alpha, int pairs,
                           std::uint64_t seed);

}  // namespace gsvm
