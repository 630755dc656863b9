#include "gsvm/vi.hpp"

#include "gsvm/gsvm.hpp"
#include "testutil.hpp"

#include <gtest/gtest.h>

using namespace gsvm;
using testutil::vec;

namespace {

OperatorHandle shifted_identity() {
    // op(w) = w - (2, 3); zero at (2, 3), inside the orthant
    return make_affine_operator(1.0, vec({-2, -3}));
}

}  // namespace

TEST(ProjectNonneg, Clamps) {
    EXPECT_NEAR(testutil::max_abs_diff(project_nonneg(vec({1, -2, 3})), vec({1, 0, 3})), 0.0,
                0.0);
    EXPECT_NEAR(testutil::max_abs_diff(project_nonneg(vec({0, 0})), vec({0, 0})), 0.0, 0.0);
    EXPECT_NEAR(testutil::max_abs_diff(project_nonneg(vec({-1, -1})), vec({0, 0})), 0.0, 0.0);
}

TEST(ProjectNonneg, MinimizesDistanceOnGrid) {
    // exhaustive lattice search around the clamp answer
    const Vector x = vec({1, -2, 3});
    const Vector z = project_nonneg(x);
    for (double a = 0.0; a <= 2.0; a += 0.25) {
        for (double b = 0.0; b <= 2.0; b += 0.25) {
            for (double c = 2.0; c <= 4.0; c += 0.25) {
                const Vector y = vec({a, b, c});
                EXPECT_LE((x - z).norm(), (x - y).norm() + 1e-15);
            }
        }
    }
}

TEST(ProjectionCharacterization, AcceptsTrueProjections) {
    EXPECT_TRUE(projection_characterization_check(vec({1, -2, 3}), vec({1, 0, 3}), 200, 5));
    EXPECT_TRUE(projection_characterization_check(vec({-1, -1}), vec({0, 0}), 200, 5));
}

TEST(ProjectionCharacterization, RejectsNonProjections) {
    EXPECT_FALSE(projection_characterization_check(vec({1, -2, 3}), vec({1, 1, 3}), 200, 5));
    EXPECT_FALSE(projection_characterization_check(vec({1, 1}), vec({-1, 1}), 200, 5));
}

TEST(Projection, NonexpansiveAndFirmJointly) {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
        const int dim = 1 + static_cast<int>(rng.next() % 4);
        const Vector x = rng.uniform_vector(dim, -10.0, 10.0);
        const Vector y = rng.uniform_vector(dim, -10.0, 10.0);
        const Vector px = project_nonneg(x);
        const Vector py = project_nonneg(y);
        EXPECT_LE((px - py).norm(), (x - y).norm() + 1e-12);
        EXPECT_LE((px - py).squaredNorm(), (x - y).dot(px - py) + 1e-12);
        EXPECT_EQ(project_nonneg(px), px);  // idempotent, bit-exact
    }
}

TEST(ViResidual, KnownValues) {
    EXPECT_NEAR(vi_residual(shifted_identity(), vec({2, 3}), 1.0), 0.0, 0.0);
    EXPECT_NEAR(vi_residual(make_affine_operator(1.0, vec({0, 0})), vec({0, 0}), 0.5), 0.0,
                0.0);
    EXPECT_NEAR(vi_residual(shifted_identity(), vec({0, 0}), 1.0), std::sqrt(13.0), 1e-15);
}

TEST(ContractionTheta, FormulaValues) {
    EXPECT_DOUBLE_EQ(contraction_theta(0.25, 2.0, 2.0), 0.5);
    EXPECT_DOUBLE_EQ(contraction_theta(1.0, 1.0, 1.0), 0.0);
}

TEST(FixedPointSolve, InteriorSolution) {
    const OperatorHandle op = make_affine_operator(2.0, vec({-4, -4}));
    SolverConfig cfg;
    cfg.rho = 0.25;
    cfg.tol = 1e-12;
    cfg.start = vec({10, 10});
    const SolveReport r = fixed_point_solve(op, cfg);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(testutil::max_abs_diff(r.solution, vec({2, 2})), 0.0, 1e-10);
    ASSERT_TRUE(r.theta.has_value());
    EXPECT_DOUBLE_EQ(*r.theta, 0.5);
    for (double ratio : r.contraction_ratios) EXPECT_LE(ratio, *r.theta + 1e-9);
}

TEST(FixedPointSolve, IdentityCollapsesInOneStep) {
    const OperatorHandle op = make_affine_operator(1.0, vec({0, 0}));
    SolverConfig cfg;
    cfg.rho = 1.0;
    cfg.start = vec({5, 5});
    const SolveReport r = fixed_point_solve(op, cfg);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.solution.cwiseAbs().maxCoeff(), 0.0, 0.0);
    // first update already lands on the solution; the second certifies it
    EXPECT_EQ(r.iterations, 2);
}

TEST(FixedPointSolve, BoundarySolution) {
    const OperatorHandle op = make_affine_operator(2.0, vec({4, 4}));
    SolverConfig cfg;
    cfg.rho = 0.25;
    cfg.tol = 1e-12;
    cfg.start = vec({3, 3});
    const SolveReport r = fixed_point_solve(op, cfg);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.solution.cwiseAbs().maxCoeff(), 0.0, 1e-10);
}

TEST(FixedPointSolve, DefaultStepIsMidwindow) {
    const OperatorHandle op = make_affine_operator(2.0, vec({-4, -4}));
    SolverConfig cfg;  // no rho: defaults to alpha/L^2 = 0.5
    cfg.tol = 1e-12;
    cfg.start = vec({9, 1});
    const SolveReport r = fixed_point_solve(op, cfg);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(testutil::max_abs_diff(r.solution, vec({2, 2})), 0.0, 1e-10);
    ASSERT_TRUE(r.theta.has_value());
    EXPECT_DOUBLE_EQ(*r.theta, contraction_theta(0.5, 2.0, 2.0));
}

TEST(FixedPointSolve, RejectsStepOutsideWindow) {
    const OperatorHandle op = make_affine_operator(2.0, vec({-4, -4}));
    SolverConfig cfg;
    cfg.rho = 1.0;  // window is (0, 1)
    cfg.start = vec({1, 1});
    try {
        fixed_point_solve(op, cfg);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "step_size");
    }
}

TEST(FixedPointSolve, BestEffortOverridesWindow) {
    const OperatorHandle op = make_affine_operator(2.0, vec({-4, -4}));
    SolverConfig cfg;
    cfg.rho = 1.0;
    cfg.start = vec({1, 1});
    cfg.best_effort = true;
    cfg.max_iter = 50;
    const SolveReport r = fixed_point_solve(op, cfg);
    EXPECT_FALSE(r.theta.has_value());
    // rho at the window edge oscillates instead of contracting
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(static_cast<long>(r.residual_history.size()), r.iterations);
}

TEST(FixedPointSolve, UncertifiedOperatorNeedsRho) {
    // same map as shifted_identity(), but with the certificates stripped
    const OperatorHandle certified = shifted_identity();
    const OperatorHandle op = make_operator(certified.eval, certified.dim);
    SolverConfig cfg;
    cfg.start = vec({4, 4});
    EXPECT_THROW(fixed_point_solve(op, cfg), Error);
    cfg.rho = 0.5;
    cfg.tol = 1e-10;
    const SolveReport r = fixed_point_solve(op, cfg);
    EXPECT_FALSE(r.theta.has_value());
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(testutil::max_abs_diff(r.solution, vec({2, 3})), 0.0, 1e-8);
}

TEST(FixedPointSolve, NormGradientWalksIntoTheOrigin) {
    // The unit-direction field pushes the whole orthant toward 0, where the
    // map is undefined; the singularity surfaces instead of being masked.
    const OperatorHandle op = make_norm_gradient_operator(2);
    SolverConfig cfg;
    cfg.rho = 0.5;
    cfg.start = vec({4, 4});
    try {
        fixed_point_solve(op, cfg);
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "singular");
    }
}

TEST(FixedPointSolve, MaxIterExhaustionIsNotAnError) {
    const OperatorHandle op = make_affine_operator(2.0, vec({-4, -4}));
    SolverConfig cfg;
    cfg.rho = 0.25;
    cfg.tol = 1e-16;
    cfg.max_iter = 5;
    cfg.start = vec({10, 10});
    const SolveReport r = fixed_point_solve(op, cfg);
    EXPECT_FALSE(r.converged);
    EXPECT_EQ(r.iterations, 5);
}

TEST(FixedPointSolve, ResidualSolutionEquivalence) {
    SplitMix64 rng(43);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 2 + static_cast<int>(rng.next() % 2);
        const double a = rng.uniform(0.5, 3.0);
        const Vector c = rng.uniform_vector(dim, -5.0, 5.0);
        const OperatorHandle op = make_affine_operator(a, c);
        SolverConfig cfg;
        cfg.tol = 1e-12;
        cfg.start = rng.uniform_vector(dim, 0.0, 10.0);
        const SolveReport r = fixed_point_solve(op, cfg);
        ASSERT_TRUE(r.converged);
        const double rho = a / (a * a);
        EXPECT_LE(vi_residual(op, r.solution, rho), 1e-10);

        // orthant complementarity at the solution
        const Vector value = op.eval(r.solution);
        EXPECT_GE(r.solution.minCoeff(), -1e-11);
        EXPECT_GE(value.minCoeff(), -1e-11);
        EXPECT_NEAR(value.dot(r.solution), 0.0, 1e-10);

        // closed form: w_i = max(0, -c_i / a)
        const Vector expected = project_nonneg(Vector(-c / a));
        EXPECT_NEAR(testutil::max_abs_diff(r.solution, expected), 0.0, 1e-9);
    }
}

TEST(CheckStationary, KnownValues) {
    EXPECT_TRUE(check_stationary(shifted_identity(), vec({2, 3}), 1e-10));
    EXPECT_FALSE(check_stationary(make_norm_gradient_operator(2), vec({1, 1}), 1e-10));
    EXPECT_FALSE(check_stationary(make_affine_operator(2.0, vec({4, 4})), vec({0, 0}), 1e-10));
}

TEST(VerifyViInequality, WholeSpaceRequiresStationarity) {
    EXPECT_TRUE(verify_vi_inequality(shifted_identity(), vec({2, 3}), 1.0, 100, 3,
                                     ViDomain::whole_space));
    EXPECT_FALSE(verify_vi_inequality(make_norm_gradient_operator(2), vec({1, 1}), 1.0, 100, 3,
                                      ViDomain::whole_space));
}

TEST(VerifyViInequality, OrthantAcceptsBoundarySolutions) {
    EXPECT_TRUE(verify_vi_inequality(make_affine_operator(2.0, vec({4, 4})), vec({0, 0}), 1.0,
                                     100, 3, ViDomain::orthant));
    // eta only scales the left factor; the verdict cannot depend on it
    EXPECT_TRUE(verify_vi_inequality(make_affine_operator(2.0, vec({4, 4})), vec({0, 0}), 7.5,
                                     100, 3, ViDomain::orthant));
}

TEST(UniquenessProbe, StronglyMonotoneOperatorsAgree) {
    SolverConfig cfg;
    cfg.tol = 1e-10;

    EXPECT_TRUE(uniqueness_probe(make_affine_operator(2.0, vec({-4, -4})), cfg,
                                 {vec({0, 0}), vec({10, 10}), vec({1, 9})}));
    EXPECT_TRUE(uniqueness_probe(make_affine_operator(1.0, vec({0, 0})), cfg,
                                 {vec({1, 1}), vec({7, 2})}));
    EXPECT_TRUE(uniqueness_probe(make_affine_operator(2.0, vec({4, 4})), cfg,
                                 {vec({5, 0}), vec({0, 5})}));
}

TEST(UniquenessProbe, NonConvergedRunIsAnError) {
    SolverConfig cfg;
    cfg.rho = 0.25;  // contracts at 0.5 per step, far too slow for 3 iterations
    cfg.tol = 1e-12;
    cfg.max_iter = 3;
    try {
        uniqueness_probe(make_affine_operator(2.0, vec({-4, -4})), cfg,
                         {vec({10, 10}), vec({0, 0})});
        FAIL() << "expected an error";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "no_convergence");
    }
}

TEST(OperatorHandle, CertificateConsistencyEnforced) {
    EXPECT_THROW(make_operator([](const Vector& w) { return w; }, 2, 1.0, 2.0), Error);
    EXPECT_THROW(make_operator({}, 2), Error);
    EXPECT_THROW(make_operator([](const Vector& w) { return w; }, 0), Error);
}

TEST(ContractionCertificate, GridOfAffineOperators) {
    // op(w) = a w + c has (L, alpha) = (a, a); every observed step ratio must
    // respect theta for any step inside the window. The stopping tolerance
    // keeps every ratio denominator well above the ~1e-15 cancellation noise
    // of the update, where the measured ratio would be meaningless.
    SplitMix64 rng(47);
    for (double a : {0.5, 1.0, 2.0, 5.0}) {
        for (int j = 1; j <= 10; ++j) {
            const double rho = (2.0 / a) * j / 11.0;
            const double theta = contraction_theta(rho, a, a);
            EXPECT_LT(theta, 1.0);
            const Vector c = rng.uniform_vector(2, -6.0, 6.0);
            const OperatorHandle op = make_affine_operator(a, c);
            SolverConfig cfg;
            cfg.rho = rho;
            cfg.tol = 1e-4;
            cfg.start = rng.uniform_vector(2, 0.0, 10.0);
            const SolveReport r = fixed_point_solve(op, cfg);
            EXPECT_TRUE(r.converged);
            EXPECT_FALSE(r.contraction_ratios.empty());
            for (double ratio : r.contraction_ratios) {
                EXPECT_LE(ratio, theta + 1e-9) << "a=" << a << " rho=" << rho;
            }
        }
        // window boundary: theta is exactly 1 and the certified path rejects
        const double rho_edge = 2.0 * a / (a * a);
        EXPECT_DOUBLE_EQ(contraction_theta(rho_edge, a, a), 1.0);
        SolverConfig cfg;
        cfg.rho = rho_edge;
        cfg.start = vec({1, 1});
        EXPECT_THROW(fixed_point_solve(make_affine_operator(a, vec({-1, -1})), cfg), Error);
    }
}
