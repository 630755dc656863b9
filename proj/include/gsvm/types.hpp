#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gsvm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Library failure with a stable machine-readable code ("infeasible",
// "dimension_mismatch", "singular", ...). The CLI maps codes starting with
// "csv"/"io"/"usage" to exit 2 and everything else to exit 1.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw Error(code, message);
}

inline void require_same_dim(Index a, Index b, const std::string& what) {
    if (a != b) {
        fail("dimension_mismatch",
             what + ": dimensions " + std::to_string(a) + " and " + std::to_string(b) +
                 " do not match");
    }
}

// One training example: feature vector x and binary label y in {+1, -1}.
struct LabeledPoint {
    Vector x;
    int y = 1;

    LabeledPoint() = default;
    LabeledPoint(Vector features, int label) : x(std::move(features)), y(label) {
        if (x.size() == 0) fail("invalid_argument", "point has no components");
        if (!x.allFinite()) fail("invalid_argument", "point has non-finite components");
        if (y != 1 && y != -1) {
            fail("invalid_argument", "label must be +1 or -1, got " + std::to_string(y));
        }
    }
};

// Ordered list of labeled points, all of the same dimension. Presence of both
// classes is required only by the training operations, which check it there.
struct DataSet {
    std::vector<LabeledPoint> points;
    Index dim = 0;

    DataSet() = default;
    explicit DataSet(std::vector<LabeledPoint> pts) : points(std::move(pts)) {
        if (points.empty()) fail("invalid_argument", "dataset has no points");
        dim = points.front().x.size();
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (points[i].x.size() != dim) {
                fail("dimension_mismatch",
                     "point " + std::to_string(i) + " has dimension " +
                         std::to_string(points[i].x.size()) + ", expected " +
                         std::to_string(dim));
            }
        }
    }

    std::size_t size() const { return points.size(); }

    bool has_both_classes() const {
        bool pos = false, neg = false;
        for (const auto& p : points) (p.y > 0 ? pos : neg) = true;
        return pos && neg;
    }
};

// Classical separating hyperplane <w, x> + b = 0. Operations that divide by
// ||w|| reject the zero vector.
struct Hyperplane {
    Vector w;
    double b = 0.0;
};

// Per-point functional and geometric margins plus their minima.
struct MarginReport {
    Vector functional;
    Vector geometric;
    double min_functional = 0.0;
    double min_geometric = 0.0;
};

}  // namespace gsvm
