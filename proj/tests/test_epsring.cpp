#include "ncsurf/epsring.hpp"
#include "ncsurf/errors.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace ncsurf;
using ncsurf::testing::random_scalar;

namespace {

const ComplexRational kHalf(mpq_class(1, 2));
const EpsScalar kEps = EpsScalar::eps();
const EpsScalar kI(ComplexRational::i());

} // namespace

TEST(EpsScalar, AddIdentityAndConjugatePair) {
    std::mt19937_64 rng(7);
    const EpsScalar s = random_scalar(rng);
    EXPECT_EQ(EpsScalar() + s, s);

    const EpsScalar a = EpsScalar(kHalf) * (EpsScalar(1) - kI * kEps);
    const EpsScalar b = EpsScalar(kHalf) * (EpsScalar(1) + kI * kEps);
    EXPECT_EQ(a + b, EpsScalar(1));
}

TEST(EpsScalar, AddCancelsDenominator) {
    // eps/(1+eps^2) + eps^3/(1+eps^2) = eps
    const EpsScalar inv = EpsScalar::inv_one_plus_eps2();
    const EpsScalar sum = kEps * inv + kEps * kEps * kEps * inv;
    EXPECT_EQ(sum, kEps);
    EXPECT_EQ(sum.denom_pow(), 0);
}

TEST(EpsScalar, ExpIAlphaTimesConjugateIsOne) {
    const EpsScalar e = EpsScalar::exp_i_alpha(1);
    ASSERT_EQ(e.denom_pow(), 1);
    // 1 - eps^2 + 2 i eps
    ASSERT_EQ(e.numerator().size(), 3u);
    EXPECT_EQ(e.numerator()[0], ComplexRational(1));
    EXPECT_EQ(e.numerator()[1], ComplexRational(0, 2));
    EXPECT_EQ(e.numerator()[2], ComplexRational(-1));
    EXPECT_EQ(e * EpsScalar::exp_i_alpha(-1), EpsScalar(1));
    EXPECT_EQ(e * EpsScalar(1), e);
}

TEST(EpsScalar, DifferenceOfSquares) {
    const EpsScalar p = (EpsScalar(1) + kI * kEps) * (EpsScalar(1) - kI * kEps);
    EXPECT_EQ(p, EpsScalar(1) + kEps * kEps);
    EXPECT_EQ(p.denom_pow(), 0);
}

TEST(EpsScalar, DivEps) {
    // (2 eps + eps^3)/(1+eps^2) / eps = (2 + eps^2)/(1+eps^2)
    const EpsScalar a = EpsScalar::from_parts({0, 2, 0, 1}, 1);
    EXPECT_EQ(a.div_eps(), EpsScalar::from_parts({2, 0, 1}, 1));
    EXPECT_EQ(EpsScalar().div_eps(), EpsScalar());
    EXPECT_THROW((EpsScalar(1) + kEps).div_eps(), NotDivisible);
}

TEST(EpsScalar, Eval) {
    const EpsScalar e = EpsScalar::exp_i_alpha(1);
    EXPECT_NEAR(std::abs(e.eval(0.0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(e.eval(1.0) - std::complex<double>(0, 1)), 0.0, 1e-15);
    EXPECT_DOUBLE_EQ(kEps.eval(0.5).real(), 0.5);
}

TEST(EpsScalar, Conj) {
    EXPECT_EQ(EpsScalar::exp_i_alpha(1).conj(), EpsScalar::exp_i_alpha(-1));
    const EpsScalar real = EpsScalar::from_parts({1, -3, mpq_class(2, 5)}, 2);
    EXPECT_EQ(real.conj(), real);
    EXPECT_EQ((kI * kEps).conj(), -(kI * kEps));
}

TEST(EpsScalar, InverseOfUnits) {
    const EpsScalar u = EpsScalar::from_parts({3, 0, 3}, 0); // 3 (1 + eps^2)
    auto inv = u.inverse();
    ASSERT_TRUE(inv.has_value());
    EXPECT_EQ(*inv * u, EpsScalar(1));
    EXPECT_FALSE(kEps.inverse().has_value());
    EXPECT_FALSE((EpsScalar(1) + kEps).inverse().has_value());
}

TEST(EpsScalar, ParseExactRational) {
    EXPECT_EQ(parse_exact_rational("-0.557"), mpq_class(-557, 1000));
    EXPECT_EQ(parse_exact_rational("3/4"), mpq_class(3, 4));
    EXPECT_EQ(parse_exact_rational("1e-3"), mpq_class(1, 1000));
    EXPECT_EQ(parse_exact_rational("2.5E2"), mpq_class(250));
    EXPECT_THROW(parse_exact_rational("abc"), DomainError);
    EXPECT_THROW(parse_exact_rational("1.2.3"), DomainError);
}

TEST(EpsScalarProperty, RingAxioms) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        const EpsScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        EXPECT_EQ((a + b) + c, a + (b + c));
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ(a * b, b * a);
    }
}

TEST(EpsScalarProperty, DivEpsUndoesMulEps) {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 300; ++trial) {
        const EpsScalar a = random_scalar(rng);
        EXPECT_EQ((kEps * a).div_eps(), a);
    }
}

TEST(EpsScalarProperty, EvalIsHomomorphism) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> e(-2.0, 2.0);
    for (int trial = 0; trial < 300; ++trial) {
        const EpsScalar a = random_scalar(rng), b = random_scalar(rng);
        const double x = e(rng);
        const auto lhs = (a * b).eval(x);
        const auto rhs = a.eval(x) * b.eval(x);
        EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST(EpsScalarProperty, CanonicalizationIsIdempotent) {
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 300; ++trial) {
        const EpsScalar a = random_scalar(rng);
        const EpsScalar again = EpsScalar::from_parts(a.numerator(), a.denom_pow());
        EXPECT_EQ(again, a);
        // Canonical: m == 0 or numerator not divisible by (1 + eps^2), i.e. p(i) != 0 or p(-i) != 0.
        if (a.denom_pow() > 0) {
            const auto at_i = [&](std::complex<double> z) {
                std::complex<double> acc = 0;
                for (auto it = a.numerator().rbegin(); it != a.numerator().rend(); ++it)
                    acc = acc * z + it->to_complex();
                return acc;
            };
            EXPECT_TRUE(std::abs(at_i({0, 1})) > 1e-9 || std::abs(at_i({0, -1})) > 1e-9);
        }
    }
}
