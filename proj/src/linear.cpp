#include "gsvm/linear.hpp"

namespace gsvm {

double decision_value(const Hyperplane& h, const Vector& x) {
    require_same_dim(h.w.size(), x.size(), "decision_value");
    return h.w.dot(x) + h.b;
}

int classify(const Hyperplane& h, const Vector& x) {
    return decision_value(h, x) >= 0.0 ? 1 : -1;
}

double functional_margin(const Hyperplane& h, const LabeledPoint& p) {
    return static_cast<double>(p.y) * decision_value(h, p.x);
}

MarginReport margin_report(const Hyperplane& h, const DataSet& ds) {
    require_same_dim(h.w.size(), ds.dim, "margin_report");
    const double norm_w = h.w.norm();
    if (norm_w == 0.0) fail("invalid_argument", "margin_report: zero weight vector");

    MarginReport r;
    const Index m = static_cast<Index>(ds.size());
    r.functional.resize(m);
    r.geometric.resize(m);
    for (Index i = 0; i < m; ++i) {
        r.functional[i] = functional_margin(h, ds.points[static_cast<std::size_t>(i)]);
        r.geometric[i] = r.functional[i] / norm_w;
    }
    r.min_functional = r.functional.minCoeff();
    r.min_geometric = r.geometric.minCoeff();
    return r;
}

}  // namespace gsvm
