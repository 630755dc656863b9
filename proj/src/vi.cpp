#include "gsvm/vi.hpp"

#include "gsvm/gsvm.hpp"
#include "gsvm/rng.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace gsvm {

OperatorHandle make_operator(std::function<Vector(const Vector&)> eval, Index dim,
                             std::optional<double> lipschitz_L,
                             std::optional<double> strong_alpha) {
    if (!eval) fail("invalid_argument", "operator needs an evaluation function");
    if (dim < 1) fail("invalid_argument", "operator needs positive dimension");
    if (lipschitz_L && *lipschitz_L <= 0.0) {
        fail("invalid_argument", "Lipschitz certificate must be positive");
    }
    if (strong_alpha && *strong_alpha <= 0.0) {
        fail("invalid_argument", "strong-monotonicity certificate must be positive");
    }
    if (lipschitz_L && strong_alpha && *strong_alpha > *lipschitz_L) {
        fail("invalid_argument",
             "alpha > L certifies an empty operator class (alpha <= L always)");
    }
    return OperatorHandle{std::move(eval), dim, lipschitz_L, strong_alpha};
}

OperatorHandle make_affine_operator(double a, const Vector& c) {
    if (c.size() < 1) fail("invalid_argument", "affine operator needs a shift vector");
    std::optional<double> L, alpha;
    if (a > 0.0) {
        L = a;
        alpha = a;
    }
    Vector shift = c;
    return make_operator([a, shift](const Vector& w) -> Vector { return a * w + shift; },
                         c.size(), L, alpha);
}

OperatorHandle make_norm_gradient_operator(Index dim) {
    return make_operator([](const Vector& w) -> Vector { return g_gradient(w); }, dim);
}

Vector project_nonneg(const Vector& x) {
    return x.cwiseMax(0.0);
}

bool projection_characterization_check(const Vector& x, const Vector& z, int samples,
                                       std::uint64_t seed) {
    require_same_dim(x.size(), z.size(), "projection_characterization_check");
    if ((z.array() < 0.0).any()) return false;  // projections land in the orthant

    const Vector d = z - x;
    auto holds_at = [&](const Vector& y) { return d.dot(y - z) >= 0.0; };

    // y = P(x) separates every non-projection z, so the check is exact even
    // before sampling.
    if (!holds_at(project_nonneg(x))) return false;
    if (!holds_at(Vector::Zero(x.size()))) return false;

    SplitMix64 rng(seed);
    for (int s = 0; s < samples; ++s) {
        if (!holds_at(rng.uniform_vector(x.size(), 0.0, 10.0))) return false;
    }
    return true;
}

double vi_residual(const OperatorHandle& op, const Vector& w, double rho) {
    if (rho <= 0.0) fail("invalid_argument", "rho must be positive");
    return (w - project_nonneg(w - rho * op.eval(w))).norm();
}

double contraction_theta(double rho, double L, double alpha) {
    const double t2 = 1.0 + rho * (rho * L * L - 2.0 * alpha);
    return std::sqrt(std::max(t2, 0.0));
}

SolveReport fixed_point_solve(const OperatorHandle& op, const SolverConfig& cfg) {
    if (cfg.tol <= 0.0) fail("invalid_argument", "tol must be positive");
    if (cfg.max_iter < 1) fail("invalid_argument", "max_iter must be at least 1");
    require_same_dim(cfg.start.size(), op.dim, "fixed_point_solve");

    const bool certified = op.lipschitz_L.has_value() && op.strong_alpha.has_value();
    double rho;
    if (cfg.rho) {
        rho = *cfg.rho;
        if (rho <= 0.0) fail("invalid_argument", "rho must be positive");
    } else if (certified) {
        rho = *op.strong_alpha / (*op.lipschitz_L * *op.lipschitz_L);
    } else {
        fail("invalid_argument", "rho is required for operators without certificates");
    }

    SolveReport report;
    if (certified) {
        const double L = *op.lipschitz_L;
        const double alpha = *op.strong_alpha;
        if (rho * L * L >= 2.0 * alpha) {
            if (!cfg.best_effort) {
                std::ostringstream os;
                os << "step size " << rho << " is outside the certified window (0, "
                   << 2.0 * alpha / (L * L) << "); theta = " << contraction_theta(rho, L, alpha);
                fail("step_size", os.str());
            }
        } else {
            report.theta = contraction_theta(rho, L, alpha);
        }
    }

    Vector w = cfg.start;
    double prev_step = -1.0;
    for (long iter = 1; iter <= cfg.max_iter; ++iter) {
        const Vector next = project_nonneg(w - rho * op.eval(w));
        const double step = (next - w).norm();
        report.residual_history.push_back(step);
        if (prev_step > 1e-12) report.contraction_ratios.push_back(step / prev_step);
        prev_step = step;
        w = next;
        report.iterations = iter;
        if (step <= cfg.tol) {
            report.converged = true;
            break;
        }
    }
    report.solution = std::move(w);
    return report;
}

bool check_stationary(const OperatorHandle& op, const Vector& w, double tol) {
    if (tol <= 0.0) fail("invalid_argument", "tol must be positive");
    return op.eval(w).norm() <= tol;
}

bool verify_vi_inequality(const OperatorHandle& op, const Vector& w, double eta, int samples,
                          std::uint64_t seed, ViDomain domain) {
    if (eta <= 0.0) fail("invalid_argument", "eta must be positive");
    if (samples < 1) fail("invalid_argument", "samples must be at least 1");
    require_same_dim(w.size(), op.dim, "verify_vi_inequality");

    const Vector g = eta * op.eval(w);
    auto holds_at = [&](const Vector& v) { return g.dot(v - w) >= 0.0; };

    // Deterministic witness: v = w - op(w) drives the inner product to
    // -||g||^2 over the whole space, so failures never depend on sampling luck.
    const Vector probe = w - op.eval(w);
    if (!holds_at(domain == ViDomain::whole_space ? probe : project_nonneg(probe))) {
        return false;
    }

    SplitMix64 rng(seed);
    const double lo = domain == ViDomain::whole_space ? -10.0 : 0.0;
    for (int s = 0; s < samples; ++s) {
        if (!holds_at(rng.uniform_vector(w.size(), lo, 10.0))) return false;
    }
    return true;
}

bool uniqueness_probe(const OperatorHandle& op, const SolverConfig& cfg,
                      const std::vector<Vector>& starts) {
    if (starts.empty()) fail("invalid_argument", "uniqueness probe needs at least one start");

    std::vector<Vector> solutions;
    solutions.reserve(starts.size());
    for (std::size_t i = 0; i < starts.size(); ++i) {
        SolverConfig run = cfg;
        run.start = starts[i];
        const SolveReport report = fixed_point_solve(op, run);
        if (!report.converged) {
            fail("no_convergence",
                 "solve from start " + std::to_string(i) + " did not converge within " +
                     std::to_string(cfg.max_iter) + " iterations");
        }
        solutions.push_back(report.solution);
    }

    for (std::size_t i = 0; i < solutions.size(); ++i) {
        for (std::size_t j = i + 1; j < solutions.size(); ++j) {
            if ((solutions[i] - solutions[j]).norm() > 10.0 * cfg.tol) return false;
        }
    }
    return true;
}

}  // namespace gsvm
