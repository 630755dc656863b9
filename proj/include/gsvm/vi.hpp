#pragma once

#include "gsvm/types.hpp"

#include <functional>
#include <optional>

namespace gsvm {

// An evaluable map from n-vectors to n-vectors with optional Lipschitz and
// strong-monotonicity certificates. Since alpha <= L for any nonempty class,
// make_operator rejects alpha > L.
struct OperatorHandle {
    std::function<Vector(const Vector&)> eval;
    Index dim = 0;
    std::optional<double> lipschitz_L;
    std::optional<double> strong_alpha;
};

OperatorHandle make_operator(std::function<Vector(const Vector&)> eval, Index dim,
                             std::optional<double> lipschitz_L = std::nullopt,
                             std::optional<double> strong_alpha = std::nullopt);

// w -> a*w + c. Carries certificates (L, alpha) = (a, a) when a > 0.
OperatorHandle make_affine_operator(double a, const Vector& c);

// w -> w / ||w||. No certificates (monotone but not strongly so, and the
// global ratio blows up near the origin).
OperatorHandle make_norm_gradient_operator(Index dim);

struct SolverConfig {
    std::optional<double> rho;      // defaults to alpha/L^2 on the certified path
    double tol = 1e-10;             // stop when ||w_{k+1} - w_k|| <= tol
    long max_iter = 1000000;
    Vector start;
    bool best_effort = false;       // permit solving outside the certified step window
};

struct SolveReport {
    Vector solution;
    long iterations = 0;
    std::vector<double> residual_history;    // ||w_{k+1} - w_k|| per step
    std::vector<double> contraction_ratios;  // successive step-norm ratios
    std::optional<double> theta;             // sqrt(1 + rho^2 L^2 - 2 rho alpha)
    bool converged = false;
};

// Componentwise max(x, 0): the nearest point of the nonnegative orthant.
Vector project_nonneg(const Vector& x);

// Samples y from the orthant (plus the deterministic witness y = P(x)) and
// tests <z, y - z> >= <x, y - z>; true exactly when z is the projection.
bool projection_characterization_check(const Vector& x, const Vector& z, int samples,
                                       std::uint64_t seed);

// ||w - P(w - rho*op(w))||; zero iff w is a fixed point of the projected step.
double vi_residual(const OperatorHandle& op, const Vector& w, double rho);

// sqrt(1 + rho^2 L^2 - 2 rho alpha), the certified contraction factor.
double contraction_theta(double rho, double L, double alpha);

// Iterates w <- P(w - rho*op(w)). With certificates present, rho must lie in
// (0, 2*alpha/L^2) unless best_effort is set; the report then carries theta
// and the observed step-norm ratios. Exhausting max_iter is reported as
// converged=false, not an error.
SolveReport fixed_point_solve(const OperatorHandle& op, const SolverConfig& cfg);

// ||op(w)|| <= tol
bool check_stationary(const OperatorHandle& op, const Vector& w, double tol);

enum class ViDomain { whole_space, orthant };

// Samples v from the chosen domain and tests <eta*op(w), v - w> >= 0. Over the
// whole space this can only hold when op(w) = 0, so the sampler always also
// probes v = w - op(w) (projected into the orthant for the orthant domain).
bool verify_vi_inequality(const OperatorHandle& op, const Vector& w, double eta, int samples,
                          std::uint64_t seed, ViDomain domain);

// Solves from every start; true iff all runs converge and agree pairwise
// within 10*tol. A non-converged run is an error naming the start.
bool uniqueness_probe(const OperatorHandle& op, const SolverConfig& cfg,
                      const std::vector<Vector>& starts);

}  // namespace gsvm
