#include "gsvm/fixtures.hpp"

#include "gsvm/linear.hpp"

#include <cmath>
#include <sstream>

namespace gsvm {
namespace {

Vector vec2(double a, double b) {
    Vector v(2);
    v << a, b;
    return v;
}

Vector vec3(double a, double b, double c) {
    Vector v(3);
    v << a, b, c;
    return v;
}

DataSet make_dataset(const std::vector<std::pair<Vector, int>>& pts) {
    std::vector<LabeledPoint> points;
    points.reserve(pts.size());
    for (const auto& [x, y] : pts) points.emplace_back(x, y);
    return DataSet(std::move(points));
}

// Checks that the expected solution sits exactly on margin 1 at every support
// point; a failure means the family pattern was built wrong.
void validate_supports(const GoldenCase& g) {
    const Hyperplane h{g.expected_w, g.expected_b.value()};
    auto check = [&](int i) {
        const double margin = functional_margin(h, g.dataset.points[i]);
        if (std::abs(margin - 1.0) > 1e-9) {
            std::ostringstream os;
            os << "expected solution misses margin equality at point " << i << " (margin "
               << margin << ")";
            fail("family_misread", os.str());
        }
    };
    if (g.support_indices) {
        for (int i : *g.support_indices) check(i);
    } else {
        for (int i = 0; i < static_cast<int>(g.dataset.size()); ++i) check(i);
    }
}

bool all_margins_feasible(const GoldenCase& g) {
    const Hyperplane h{g.expected_w, g.expected_b.value()};
    for (const auto& p : g.dataset.points) {
        if (functional_margin(h, p) < 1.0 - 1e-9) return false;
    }
    return true;
}

void validate_spec(const FamilySpec& spec) {
    if (spec.n < 2) fail("invalid_family_spec", "dimension n must be at least 2");
    if (spec.alphas.size() != spec.n) {
        fail("invalid_family_spec", "alphas must have length n");
    }
    for (Index i = 0; i < spec.alphas.size(); ++i) {
        if (spec.alphas[i] == 0.0) fail("invalid_family_spec", "alphas must be nonzero");
    }
    if (spec.k == 1.0) fail("invalid_family_spec", "k = 1 collapses both classes");

    switch (spec.family) {
        case Family::A:
            break;
        case Family::B:
            if (!spec.m) fail("invalid_family_spec", "family B needs the window size m");
            if (*spec.m < 1 || *spec.m >= spec.n) {
                fail("invalid_family_spec", "family B needs 1 <= m < n");
            }
            break;
        case Family::C:
            if (spec.n != 3) fail("invalid_family_spec", "family C is three-dimensional");
            if (!spec.betas || spec.betas->size() != 3) {
                fail("invalid_family_spec", "family C needs three betas");
            }
            if (spec.k <= 0.0) fail("invalid_family_spec", "family C needs k > 0");
            for (Index i = 0; i < 3; ++i) {
                if (spec.alphas[i] <= 0.0 || (*spec.betas)[i] < spec.alphas[i]) {
                    fail("invalid_family_spec", "family C needs beta_i >= alpha_i > 0");
                }
            }
            break;
    }
}

std::vector<Vector> positive_patterns(const FamilySpec& spec) {
    const int n = spec.n;
    std::vector<Vector> pts;
    switch (spec.family) {
        case Family::A:
            // Each point is the full alpha vector with one coordinate zeroed,
            // starting from the last coordinate.
            for (int j = 0; j < n; ++j) {
                Vector p = spec.alphas;
                p[n - 1 - j] = 0.0;
                pts.push_back(p);
            }
            break;
        case Family::B: {
            // Cyclic windows of m consecutive coordinates carrying alpha_i.
            const int m = *spec.m;
            for (int start = 0; start < n; ++start) {
                Vector p = Vector::Zero(n);
                for (int t = 0; t < m; ++t) {
                    const int i = (start + t) % n;
                    p[i] = spec.alphas[i];
                }
                pts.push_back(p);
            }
            break;
        }
        case Family::C:
            for (int i = 0; i < 3; ++i) pts.push_back(spec.alphas[i] * Vector::Unit(3, i));
            for (int i = 0; i < 3; ++i) pts.push_back((*spec.betas)[i] * Vector::Unit(3, i));
            break;
    }
    return pts;
}

}  // namespace

GoldenCase fixture(WorkedExample id) {
    GoldenCase g;
    switch (id) {
        case WorkedExample::ex2_2:
            g.dataset = make_dataset({{vec2(1, 0), 1},
                                      {vec2(0, 1), 1},
                                      {vec2(-1, 0), -1},
                                      {vec2(0, -1), -1}});
            g.expected_w = vec2(1, 1);
            g.expected_b = 0.0;
            break;
        case WorkedExample::ex2_3_s1:
            g.dataset = make_dataset({{vec2(1, 0), 1},
                                      {vec2(0, 1), 1},
                                      {vec2(-0.5, 0), -1},
                                      {vec2(0, -0.5), -1}});
            g.expected_w = vec2(4.0 / 3.0, 4.0 / 3.0);
            g.expected_b = -1.0 / 3.0;
            break;
        case WorkedExample::ex2_3_s2:
            g.dataset = make_dataset({{vec2(0.5, 0), 1},
                                      {vec2(0, 0.5), 1},
                                      {vec2(-2, 0), -1},
                                      {vec2(0, -2), -1}});
            g.expected_w = vec2(0.8, 0.8);
            g.expected_b = 0.6;
            break;
        case WorkedExample::ex2_3_s3:
            g.dataset = make_dataset({{vec2(0.5, 0), 1},
                                      {vec2(0, 0.5), 1},
                                      {vec2(1, 0), 1},
                                      {vec2(0, 1), 1},
                                      {vec2(-0.5, 0), -1},
                                      {vec2(0, -0.5), -1},
                                      {vec2(-2, 0), -1},
                                      {vec2(0, -2), -1}});
            g.expected_w = vec2(2, 2);
            g.expected_b = 0.0;
            // Only the inner four points sit on the margin; the outer four
            // are interior, so they stay out of the equality system.
            g.support_indices = std::vector<int>{0, 1, 4, 5};
            break;
        case WorkedExample::ex2_14:
            g.dataset = make_dataset({{vec3(1, 0, 0), 1},
                                      {vec3(1, 1, 0), 1},
                                      {vec3(0, 1, 1), 1},
                                      {vec3(-0.5, 0, 0), -1},
                                      {vec3(-0.5, -0.5, 0), -1},
                                      {vec3(0, -0.5, -0.5), -1}});
            g.expected_w = vec3(4.0 / 3.0, 0.0, 4.0 / 3.0);
            g.expected_b = -1.0 / 3.0;
            g.note =
                "expected values solve the all-equalities system; the max-margin "
                "optimum on this data is (4/3, 2/3, 2/3) with the same offset";
            break;
        default:
            fail("unknown_example", "unknown fixture id");
    }
    g.expected_norm = g.expected_w.norm();
    g.margin_feasible = all_margins_feasible(g);
    validate_supports(g);
    return g;
}

GoldenCase gen_family(const FamilySpec& spec) {
    validate_spec(spec);

    const int n = spec.n;
    double prefactor = 0.0;
    switch (spec.family) {
        case Family::A:
            prefactor = 2.0 / ((n - 1) * (1.0 - spec.k));
            break;
        case Family::B:
            prefactor = 2.0 / (*spec.m * (1.0 - spec.k));
            break;
        case Family::C:
            prefactor = 2.0 / (1.0 - spec.k);
            break;
    }

    const std::vector<Vector> positives = positive_patterns(spec);
    std::vector<LabeledPoint> points;
    for (const auto& p : positives) points.emplace_back(p, 1);
    for (const auto& p : positives) {
        // k < 0 turns the zero-pattern entries into -0.0; keep them plain
        Vector scaled = spec.k * p;
        for (Index i = 0; i < scaled.size(); ++i) {
            if (scaled[i] == 0.0) scaled[i] = 0.0;
        }
        points.emplace_back(std::move(scaled), -1);
    }

    GoldenCase g;
    g.dataset = DataSet(std::move(points));
    g.expected_w = prefactor * spec.alphas.cwiseInverse();
    g.expected_b = 1.0 - 2.0 / (1.0 - spec.k);
    g.expected_norm = g.expected_w.norm();

    if (spec.family == Family::B) {
        g.note =
            "norm prefactor 2/(m(1-k)) taken from the weight matrix; the "
            "2/((n-1)(1-k)) variant fails the margin equalities unless m = n-1";
    }
    if (spec.family == Family::C) {
        // The beta points are interior: only the alpha pairs constrain the
        // solve.
        const int total = static_cast<int>(g.dataset.size());
        g.support_indices = std::vector<int>{0, 1, 2, total / 2, total / 2 + 1, total / 2 + 2};
        g.note = "beta points are interior; margin_feasible records whether they "
                 "clear functional margin 1";
    }

    validate_supports(g);
    g.margin_feasible = all_margins_feasible(g);
    return g;
}

}  // namespace gsvm
