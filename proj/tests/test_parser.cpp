#include "identity_corpus.hpp"

#include "ncsurf/errors.hpp"
#include "ncsurf/parser.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace ncsurf;

namespace {

AlgebraContext at(const char* R) { return AlgebraContext{mpq_class(R)}; }

NormalForm gen(const char* name, const AlgebraContext& ctx) { return NormalForm::generator(name, ctx); }

size_t error_offset(std::string_view src) {
    try {
        parse_ast(src);
    } catch (const ParseError& e) {
        return e.offset;
    }
    ADD_FAILURE() << "no ParseError for " << src;
    return 0;
}

} // namespace

TEST(ParseExpr, DocumentedExamples) {
    const auto ctx = at("0");
    EXPECT_TRUE(parse_expr("[x,y] - i*eps*z", ctx).is_zero());
    EXPECT_TRUE(parse_expr("u*u' - 1", ctx).is_zero());
    EXPECT_TRUE(parse_expr("ap*am - am*ap - 2*eps*z", ctx).is_zero());
    EXPECT_EQ(error_offset("x + * y"), 4u);
}

TEST(ParseExpr, IdentityCorpusReducesToZero) {
    const AlgebraContext ctx{mpq_class(std::string(ncsurf::testing::kCorpusR))};
    for (auto src : ncsurf::testing::kIdentityCorpus) {
        const NormalForm nf = parse_expr(src, ctx);
        EXPECT_TRUE(nf.is_zero()) << src << " -> " << nf.to_string();
    }
}

TEST(ParseExpr, CorpusIsNotTriviallyZeroAtOtherR) {
    // only the Cassini line mentions R; it must notice a different context
    const auto ctx = at("1");
    EXPECT_FALSE(parse_expr(ncsurf::testing::kIdentityCorpus[4], ctx).is_zero());
    EXPECT_TRUE(parse_expr(ncsurf::testing::kIdentityCorpus[0], ctx).is_zero());
}

TEST(ParseExpr, PrecedenceAndAssociativity) {
    const auto ctx = at("1/3");
    const auto x = gen("x", ctx), y = gen("y", ctx), z = gen("z", ctx);
    EXPECT_EQ(parse_expr("x + y*z", ctx), x + y * z);
    EXPECT_EQ(parse_expr("x - y - z", ctx), x - y - z);
    EXPECT_EQ(parse_expr("x*y^2", ctx), x * y * y);
    EXPECT_EQ(parse_expr("-x^2", ctx), ComplexRational(-1) * (x * x));
    EXPECT_EQ(parse_expr("x*y'", ctx), x * y);
    EXPECT_EQ(parse_expr("(x*y)'", ctx), y * x);
    EXPECT_EQ(parse_expr("[x,y]^2", ctx), commutator(x, y) * commutator(x, y));
    EXPECT_EQ(parse_expr("  x\t*\n y ", ctx), x * y);
}

TEST(ParseExpr, LiteralsStayExact) {
    const auto ctx = at("0");
    EXPECT_EQ(parse_expr("0.1", ctx), NormalForm::scalar(EpsScalar(ComplexRational(mpq_class(1, 10))), ctx));
    EXPECT_EQ(parse_expr("3/4", ctx), NormalForm::scalar(EpsScalar(ComplexRational(mpq_class(3, 4))), ctx));
    EXPECT_EQ(parse_expr("2.5e-1", ctx), NormalForm::scalar(EpsScalar(ComplexRational(mpq_class(1, 4))), ctx));
    EXPECT_TRUE(parse_expr("0.1 + 0.2 - 0.3", ctx).is_zero());
}

TEST(ParseExpr, NegativePowers) {
    const auto ctx = at("0");
    EXPECT_EQ(parse_expr("u^-2", ctx), NormalForm::monomial(0, -2, ComplexRational(1), ctx));
    EXPECT_EQ(parse_expr("ud^-1", ctx), gen("u", ctx));
    EXPECT_THROW(parse_expr("x^-1", ctx), DomainError);
    EXPECT_THROW(parse_expr("ap^-1", ctx), DomainError);
}

TEST(ParseExpr, Errors) {
    const auto ctx = at("0");
    EXPECT_EQ(error_offset(""), 0u);
    EXPECT_EQ(error_offset("x +"), 3u);
    EXPECT_EQ(error_offset("(x"), 2u);
    EXPECT_EQ(error_offset("[x y]"), 3u);
    EXPECT_EQ(error_offset("x y"), 2u);
    EXPECT_EQ(error_offset("x ^ y"), 4u);
    EXPECT_EQ(error_offset("x $ y"), 2u);
    EXPECT_EQ(error_offset("x + q"), 4u);
    try {
        parse_ast("x + * y");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::find(e.expected.begin(), e.expected.end(), "identifier"), e.expected.end());
    }
}

TEST(ParseExpr, ExponentCap) {
    const auto ctx = at("0");
    EXPECT_THROW(parse_expr("u^100000", ctx), ParseError);
    EXPECT_NO_THROW(parse_expr("u^256", ctx));
}
