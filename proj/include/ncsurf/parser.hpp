#pragma once

// Surface syntax for algebra elements.
//
//   expr    := term (('+' | '-') term)*
//   term    := unary ('*' unary)*
//   unary   := '-' unary | power
//   power   := postfix ('^' '-'? integer)?
//   postfix := primary '\''*
//   primary := identifier | number | '(' expr ')' | '[' expr ',' expr ']'
//
// Identifiers: x y z w u ud ap am eps i. Numbers are decimal ("0.5", "1e-3")
// or rational ("3/4") literals and stay exact.

#include "ncsurf/ncalgebra.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ncsurf {

struct ExprNode {
    enum class Kind { Identifier, Number, Add, Sub, Mul, Neg, Pow, Commutator, Adjoint };

    Kind kind;
    std::size_t offset = 0;
    /// identifier name or literal text
    std::string text;
    long exponent = 0;
    std::vector<std::shared_ptr<const ExprNode>> children;
};

using ExprAst = std::shared_ptr<const ExprNode>;

/// Throws ParseError.
ExprAst parse_ast(std::string_view src);

/// Fold a tree into a normal form. Negative powers need an invertible base
/// (a power of u times a unit scalar); otherwise DomainError.
NormalForm evaluate(const ExprNode& node, const AlgebraContext& ctx);

NormalForm parse_expr(std::string_view src, const AlgebraContext& ctx);

} // namespace ncsurf
