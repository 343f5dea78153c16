#include "ncsurf/errors.hpp"
#include "ncsurf/representations.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace ncsurf;

namespace {

constexpr double kPi = std::numbers::pi;

ReprSpec s2_at_zero(int n) {
    // At R = 0 the minimal solution is alpha = pi/n, beta' = -pi/2.
    ReprSpec s;
    s.family = Family::S2Min;
    s.R = 0.0;
    s.n = n;
    s.alpha = kPi / n;
    s.beta_prime = -kPi / 2;
    return s;
}

ReprSpec t2(double R, int n, int k, double bp, std::complex<double> nu = 1.0) {
    ReprSpec s;
    s.family = Family::T2Finite;
    s.R = R;
    s.n = n;
    s.k = k;
    s.beta_prime = bp;
    s.nu = nu;
    return s;
}

ReprSpec window(double R, double alpha, double bp, int M) {
    ReprSpec s;
    s.family = Family::T2Window;
    s.R = R;
    s.alpha = alpha;
    s.beta_prime = bp;
    s.M = M;
    return s;
}

double frob(const Matrix& m) { return m.norm(); }

} // namespace

TEST(CSquared, Examples) {
    EXPECT_NEAR(c_squared(0.0, 0.0, kPi / 2), std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(c_squared(kPi, 3.0, 2 * kPi / 3), 1.0, 1e-12);
    // minimal endpoint: cos(beta') = -R cos(alpha/2)
    const double R = 0.3, alpha = 0.7;
    const double bp = -std::acos(-R * std::cos(alpha / 2));
    EXPECT_NEAR(c_squared(bp, R, alpha), 0.0, 1e-14);
}

TEST(EpsilonOfAlpha, Examples) {
    EXPECT_NEAR(epsilon_of_alpha(kPi / 2), 1.0, 1e-15);
    EXPECT_NEAR(epsilon_of_alpha(2 * std::atan(0.5)), 0.5, 1e-15);
    EXPECT_GT(epsilon_of_alpha(1e-12), 0.0);
    EXPECT_LT(epsilon_of_alpha(1e-12), 1e-11);
    EXPECT_THROW(epsilon_of_alpha(0.0), DomainError);
    EXPECT_THROW(epsilon_of_alpha(kPi), DomainError);
    EXPECT_THROW(epsilon_of_alpha(-0.1), DomainError);
}

TEST(BuildS2, TwoDimensionalAtRZero) {
    const ReprMatrices m = build_s2(s2_at_zero(2));
    ASSERT_EQ(m.dim(), 2);
    EXPECT_LT(std::abs(m.U(0, 0) - std::polar(1.0, -kPi / 4)), 1e-14);
    EXPECT_LT(std::abs(m.U(1, 1) - std::polar(1.0, kPi / 4)), 1e-14);
    EXPECT_NEAR(m.Ap(1, 0).real(), std::pow(2.0, 0.25), 1e-14);
    EXPECT_EQ(m.Ap(1, 0).imag(), 0.0);
    EXPECT_EQ(m.Ap(0, 1), 0.0);
    EXPECT_LT(verify_relations(m).max(), 1e-12);
}

TEST(BuildS2, RoundedParametersMissTheSolutionCurve) {
    // The rounded values (-0.5576, 4, 0.5, -1) miss the endpoint condition by ~4e-5.
    ReprSpec s;
    s.family = Family::S2Min;
    s.R = -0.5576;
    s.n = 4;
    s.alpha = 0.5;
    s.beta_prime = -1.0;
    EXPECT_THROW(build_s2(s), InvalidSpec);
}

TEST(BuildS2, BadNonMinimalCandidate) {
    ReprSpec s;
    s.family = Family::S2NonMin;
    s.R = 2.22;
    s.n = 11;
    s.alpha = 2.40;
    s.beta_prime = -3.77;
    EXPECT_THROW(build_s2(s), InvalidSpec);
}

TEST(BuildS2, RejectsBadArguments) {
    ReprSpec s = s2_at_zero(4);
    s.family = Family::T2Finite;
    EXPECT_THROW(build_s2(s), InvalidSpec);
    s = s2_at_zero(4);
    s.n = 1;
    EXPECT_THROW(build_s2(s), InvalidSpec);
    s = s2_at_zero(4);
    s.beta_prime = -1.0;
    EXPECT_THROW(build_s2(s), InvalidSpec);
}

TEST(BuildT2Finite, ExampleValues) {
    const ReprMatrices m = build_t2_finite(t2(3.0, 3, 1, kPi));
    EXPECT_NEAR(std::abs(m.Ap(0, 2)), 1.0, 1e-12);
    EXPECT_NEAR(m.Ap(1, 0).real(), 2.0, 1e-12);
    EXPECT_NEAR(m.Ap(2, 1).real(), 2.0, 1e-12);
    EXPECT_LT(verify_relations(m).max(), 1e-11);
    EXPECT_TRUE(check_irreducible(m));
}

TEST(BuildT2Finite, NoRepresentationsBelowOne) {
    for (double bp : {-3.0, -1.0, 0.0, 1.0, 2.5, 3.1})
        EXPECT_THROW(build_t2_finite(t2(0.9, 5, 1, bp)), InvalidSpec) << bp;
}

TEST(BuildT2Finite, RejectsBadIndices) {
    EXPECT_THROW(build_t2_finite(t2(3.0, 6, 2, kPi)), InvalidSpec);
    EXPECT_THROW(build_t2_finite(t2(3.0, 5, 3, kPi)), InvalidSpec);
    EXPECT_THROW(build_t2_finite(t2(3.0, 5, 0, kPi)), InvalidSpec);
    EXPECT_THROW(build_t2_finite(t2(3.0, 5, 1, kPi, 2.0)), InvalidSpec);
}

TEST(BuildT2Finite, WrapPhase) {
    const double phi = 0.7;
    const ReprMatrices a = build_t2_finite(t2(3.0, 5, 2, 2.45));
    const ReprMatrices b = build_t2_finite(t2(3.0, 5, 2, 2.45, std::polar(1.0, phi)));
    EXPECT_LT(verify_relations(a).max(), 1e-11);
    EXPECT_LT(verify_relations(b).max(), 1e-11);
    EXPECT_LT(std::abs(ladder_cycle_phase(a) - 1.0), 1e-12);
    EXPECT_LT(std::abs(ladder_cycle_phase(b) - std::polar(1.0, phi)), 1e-12);
    EXPECT_LT(std::abs(b.Am(4, 0) - std::polar(std::abs(b.Am(4, 0)), phi)), 1e-12);
}

TEST(BuildT2Window, Valid) {
    const ReprMatrices m = build_t2_window(window(1.2, 1.0, 0.0, 8));
    EXPECT_EQ(m.dim(), 17);
    EXPECT_LT(verify_relations(m).max(), 1e-12);
    EXPECT_TRUE(check_irreducible(m));
}

TEST(BuildT2Window, BelowThreshold) { EXPECT_THROW(build_t2_window(window(1.1, 1.0, 0.0, 8)), InvalidSpec); }

TEST(BuildT2Window, SemiInfiniteSplits) {
    const double alpha = 1.0;
    const ReprMatrices m = build_t2_window(window(1.0 / std::cos(alpha / 2), alpha, -kPi, 8));
    // C at m = 0 connects window index M - 1 to M.
    EXPECT_EQ(m.Ap(8, 7), 0.0);
    EXPECT_LT(verify_relations(m).max(), 1e-12);
    EXPECT_FALSE(check_irreducible(m));
}

TEST(VerifyRelations, DetectsPerturbation) {
    ReprMatrices m = build_s2(s2_at_zero(5));
    m.Ap(2, 1) += 1e-3;
    m.Am = m.Ap.adjoint();
    EXPECT_GT(verify_relations(m).max(), 1e-5);
}

TEST(RepEvaluate, Basics) {
    const ReprMatrices m = build_s2(s2_at_zero(4));
    const AlgebraContext ctx{0};
    const Matrix Id = Matrix::Identity(4, 4);
    EXPECT_LT(frob(rep_evaluate(NormalForm::generator("eps", ctx), m) - m.eps * Id), 1e-14);
    const NormalForm uud = NormalForm::generator("u", ctx) * NormalForm::generator("ud", ctx);
    EXPECT_LT(frob(rep_evaluate(uud, m) - Id), 1e-14);
    EXPECT_THROW(rep_evaluate(NormalForm::generator("x", AlgebraContext{1}), m), ContextMismatch);
}

TEST(RepEvaluate, HomomorphismAndAdjoint) {
    std::mt19937_64 rng(11);
    std::vector<std::pair<AlgebraContext, ReprMatrices>> reps;
    reps.emplace_back(AlgebraContext{0}, build_s2(s2_at_zero(6)));
    reps.emplace_back(AlgebraContext{3}, build_t2_finite(t2(3.0, 5, 2, 2.45, std::polar(1.0, 0.4))));
    reps.emplace_back(AlgebraContext{mpq_class(3, 2)}, build_t2_finite(t2(1.5, 7, 1, 2.9)));
    for (const auto& [ctx, m] : reps) {
        for (int trial = 0; trial < 40; ++trial) {
            const NormalForm f = ncsurf::testing::random_element(rng, ctx);
            const NormalForm g = ncsurf::testing::random_element(rng, ctx);
            const Matrix pf = rep_evaluate(f, m), pg = rep_evaluate(g, m);
            const Matrix prod = pf * pg;
            EXPECT_LT(frob(rep_evaluate(f * g, m) - prod) / (1 + frob(prod)), 1e-9);
            EXPECT_LT(frob(rep_evaluate(f.adjoint(), m) - pf.adjoint()) / (1 + frob(pf)), 1e-10);
        }
    }
}

TEST(CheckIrreducible, DirectSumIsReducible) {
    const ReprMatrices a = build_s2(s2_at_zero(3));
    EXPECT_TRUE(check_irreducible(a));
    ReprMatrices sum = a;
    sum.U = Matrix::Zero(6, 6);
    sum.Ap = Matrix::Zero(6, 6);
    sum.U.topLeftCorner(3, 3) = a.U;
    sum.Ap.topLeftCorner(3, 3) = a.Ap;
    // shift the second copy's spectrum so only connectivity fails
    sum.U.bottomRightCorner(3, 3) = a.U * std::polar(1.0, 0.1);
    sum.Ap.bottomRightCorner(3, 3) = a.Ap;
    sum.Am = sum.Ap.adjoint();
    EXPECT_FALSE(check_irreducible(sum));
}

TEST(FuzzySphere, Examples) {
    const ReprMatrices m2 = build_fuzzy_sphere(2);
    EXPECT_NEAR(m2.eps, 2.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(m2.Z(0, 0).real(), -m2.eps / 2, 1e-15);
    EXPECT_NEAR(m2.Z(1, 1).real(), m2.eps / 2, 1e-15);
    EXPECT_NEAR(build_fuzzy_sphere(3).eps, 0.7071067811865476, 1e-15);
    for (int n = 2; n <= 10; ++n) {
        const ReprMatrices m = build_fuzzy_sphere(n);
        EXPECT_LT(verify_relations(m).max(), 1e-12) << n;
        Matrix p = Matrix::Identity(n, n);
        for (int t = 0; t < n; ++t) p = p * m.Ap;
        EXPECT_EQ(frob(p), 0.0);
        EXPECT_TRUE(check_irreducible(m));
    }
    EXPECT_THROW(build_fuzzy_sphere(1), DomainError);
}

TEST(NcTorus, Examples) {
    const TorusPair t3 = build_nc_torus(3, 1, 0.0, 1.0);
    EXPECT_LT(verify_torus(t3).max(), 1e-12);
    const TorusPair t2p = build_nc_torus(2, 1, 0.3, 1.0);
    EXPECT_LT(std::abs(t2p.q + 1.0), 1e-15);
    const TorusPair t = build_nc_torus(5, 2, 0.4, std::polar(1.0, 1.1));
    EXPECT_LT(verify_torus(t).max(), 1e-12);
    Matrix p = Matrix::Identity(5, 5);
    for (int m = 1; m <= 15; ++m) {
        p = p * t.V;
        EXPECT_GT(frob(p), 1.0);
    }
    EXPECT_THROW(build_nc_torus(4, 2, 0.0), DomainError);
}

// Properties

TEST(Properties, GaugeInvariance) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ph(-kPi, kPi);
    for (const ReprSpec& s : {t2(3.0, 5, 2, 2.45, std::polar(1.0, 0.9)), t2(1.5, 7, 1, 2.9)}) {
        const ReprMatrices m = build_t2_finite(s);
        std::vector<double> phases(m.dim());
        for (double& p : phases) p = ph(rng);
        const ReprMatrices g = gauge_transform(m, phases);
        const ResidualReport a = verify_relations(m), b = verify_relations(g);
        for (size_t j = 0; j < a.entries.size(); ++j)
            EXPECT_NEAR(a.entries[j].second, b.entries[j].second, 1e-12) << a.entries[j].first;
        EXPECT_LT(std::abs(ladder_cycle_phase(m) - ladder_cycle_phase(g)), 1e-12);
    }
}

TEST(Properties, Spectrum) {
    const double alpha = 2 * kPi * 3 / 7;
    const ReprMatrices m = build_t2_finite(t2(5.0, 7, 3, 2.5));
    for (int j = 0; j < 7; ++j) {
        EXPECT_LT(std::abs(m.U(j, j) - std::polar(1.0, 2.5 + alpha / 2 + j * alpha)), 1e-12);
        // n-th roots translated: u^n is a constant multiple of the identity
        EXPECT_LT(std::abs(std::pow(m.U(j, j), 7) - std::polar(1.0, 7 * (2.5 + alpha / 2))), 1e-11);
    }
    EXPECT_TRUE(check_irreducible(m));
}

TEST(Properties, LadderTermination) {
    for (int n : {2, 3, 7, 16}) {
        const ReprMatrices m = build_s2(s2_at_zero(n));
        Matrix p = Matrix::Identity(n, n);
        for (int t = 0; t < n; ++t) p = p * m.Ap;
        EXPECT_EQ(frob(p), 0.0);
    }
    const ReprMatrices m = build_t2_finite(t2(3.0, 5, 2, 2.45, std::polar(1.0, 0.6)));
    Matrix p = Matrix::Identity(5, 5);
    for (int t = 0; t < 5; ++t) p = p * m.Ap;
    double prod = 1.0;
    for (int j = 0; j < 5; ++j) prod *= std::sqrt(c_squared(2.45 + j * m.spec.alpha, 3.0, m.spec.alpha));
    for (int j = 0; j < 5; ++j) {
        EXPECT_NEAR(std::abs(p(j, j)), prod, 1e-10);
        EXPECT_LT(std::abs(p(j, j) / std::abs(p(j, j)) - std::polar(1.0, -0.6)), 1e-12);
    }
    EXPECT_NEAR(frob(p), prod * std::sqrt(5.0), 1e-9);
}

TEST(Properties, CommutativeLimitShadow) {
    double last = 1e9;
    for (int n : {4, 8, 16, 32}) {
        const ReprMatrices m = build_s2(s2_at_zero(n));
        EXPECT_LT(m.eps, last);
        last = m.eps;
        const Coordinates c = coordinates(m);
        const Matrix shadow = (c.X * c.Y - c.Y * c.X) / std::complex<double>(0, m.eps) - c.Z;
        EXPECT_LT(frob(shadow) / std::sqrt(double(n)), 0.1);
    }
}
