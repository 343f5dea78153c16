#include "ncsurf/parser.hpp"

#include "ncsurf/errors.hpp"

#include <cctype>
#include <cstdlib>

namespace ncsurf {

namespace {

enum class Tok { Ident, Number, Plus, Minus, Star, Caret, LParen, RParen, LBracket, RBracket, Comma, Quote, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t offset;
};

const std::vector<std::string> kOperand = {"identifier", "number", "'('", "'['", "'-'"};
constexpr long kMaxExponent = 256;

std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return "'" + t.text + "'";
}

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto digit = [&](std::size_t j) { return j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])); };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < src.size() && (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) ++i;
            out.push_back({Tok::Ident, std::string(src.substr(start, i - start)), start});
            continue;
        }
        if (digit(i) || (c == '.' && digit(i + 1))) {
            while (digit(i)) ++i;
            if (i < src.size() && src[i] == '.') {
                ++i;
                while (digit(i)) ++i;
            }
            if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
                std::size_t j = i + 1;
                if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
                if (digit(j)) {
                    i = j;
                    while (digit(i)) ++i;
                }
            }
            // a rational literal "a/b" is one token
            if (i < src.size() && src[i] == '/' && digit(i + 1)) {
                ++i;
                while (digit(i)) ++i;
            }
            out.push_back({Tok::Number, std::string(src.substr(start, i - start)), start});
            continue;
        }
        Tok kind;
        switch (c) {
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '^': kind = Tok::Caret; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '[': kind = Tok::LBracket; break;
        case ']': kind = Tok::RBracket; break;
        case ',': kind = Tok::Comma; break;
        case '\'': kind = Tok::Quote; break;
        default:
            throw ParseError(start, {"operator", "operand"}, "'" + std::string(1, c) + "'");
        }
        out.push_back({kind, std::string(1, c), start});
        ++i;
    }
    out.push_back({Tok::End, "", src.size()});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    ExprAst parse() {
        ExprAst e = expr();
        if (peek().kind != Tok::End) throw ParseError(peek().offset, {"'+'", "'-'", "'*'", "end of input"}, describe(peek()));
        return e;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& take() { return toks_[pos_++]; }

    void expect(Tok kind, const char* what) {
        if (peek().kind != kind) throw ParseError(peek().offset, {what}, describe(peek()));
        ++pos_;
    }

    static ExprAst node(ExprNode::Kind kind, std::size_t offset, std::vector<ExprAst> children = {}) {
        auto n = std::make_shared<ExprNode>();
        n->kind = kind;
        n->offset = offset;
        n->children = std::move(children);
        return n;
    }

    ExprAst expr() {
        ExprAst lhs = term();
        while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
            const Token& op = take();
            ExprAst rhs = term();
            lhs = node(op.kind == Tok::Plus ? ExprNode::Kind::Add : ExprNode::Kind::Sub, op.offset, {lhs, rhs});
        }
        return lhs;
    }

    ExprAst term() {
        ExprAst lhs = unary();
        while (peek().kind == Tok::Star) {
            const Token& op = take();
            lhs = node(ExprNode::Kind::Mul, op.offset, {lhs, unary()});
        }
        return lhs;
    }

    ExprAst unary() {
        if (peek().kind == Tok::Minus) {
            const Token& op = take();
            return node(ExprNode::Kind::Neg, op.offset, {unary()});
        }
        return power();
    }

    ExprAst power() {
        ExprAst base = postfix();
        if (peek().kind != Tok::Caret) return base;
        const Token& op = take();
        bool negative = false;
        if (peek().kind == Tok::Minus) {
            negative = true;
            take();
        }
        const Token& lit = peek();
        const bool integer = lit.kind == Tok::Number &&
                             lit.text.find_first_not_of("0123456789") == std::string::npos;
        if (!integer) throw ParseError(lit.offset, {"integer exponent"}, describe(lit));
        take();
        if (lit.text.size() > 6 || std::strtol(lit.text.c_str(), nullptr, 10) > kMaxExponent)
            throw ParseError(lit.offset, {"exponent <= " + std::to_string(kMaxExponent)}, describe(lit));
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprNode::Kind::Pow;
        n->offset = op.offset;
        n->exponent = std::strtol(lit.text.c_str(), nullptr, 10) * (negative ? -1 : 1);
        n->children = {base};
        return n;
    }

    ExprAst postfix() {
        ExprAst e = primary();
        while (peek().kind == Tok::Quote) {
            const Token& op = take();
            e = node(ExprNode::Kind::Adjoint, op.offset, {e});
        }
        return e;
    }

    ExprAst primary() {
        const Token& t = peek();
        switch (t.kind) {
        case Tok::Ident: {
            static const std::vector<std::string> names = {"x", "y", "z", "w", "u", "ud", "ap", "am", "eps", "i"};
            bool known = false;
            for (const auto& n : names) known = known || n == t.text;
            if (!known) throw ParseError(t.offset, {"identifier (x y z w u ud ap am eps i)"}, describe(t));
            take();
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Identifier;
            n->offset = t.offset;
            n->text = t.text;
            return n;
        }
        case Tok::Number: {
            take();
            auto n = std::make_shared<ExprNode>();
            n->kind = ExprNode::Kind::Number;
            n->offset = t.offset;
            n->text = t.text;
            return n;
        }
        case Tok::LParen: {
            take();
            ExprAst e = expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        case Tok::LBracket: {
            const std::size_t at = take().offset;
            ExprAst a = expr();
            expect(Tok::Comma, "','");
            ExprAst b = expr();
            expect(Tok::RBracket, "']'");
            return node(ExprNode::Kind::Commutator, at, {a, b});
        }
        default:
            throw ParseError(t.offset, kOperand, describe(t));
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

NormalForm inverse_of(const NormalForm& f) {
    if (f.terms().size() == 1) {
        const auto& [key, coeff] = *f.terms().begin();
        if (key.first == 0) {
            if (auto inv = coeff.inverse()) return NormalForm::monomial(0, -key.second, *inv, f.context());
        }
    }
    throw DomainError("negative power of a non-invertible element: " + f.to_string());
}

} // namespace

ExprAst parse_ast(std::string_view src) { return Parser(lex(src)).parse(); }

NormalForm evaluate(const ExprNode& node, const AlgebraContext& ctx) {
    using K = ExprNode::Kind;
    auto arg = [&](std::size_t i) { return evaluate(*node.children[i], ctx); };
    switch (node.kind) {
    case K::Identifier:
        if (node.text == "i") return NormalForm::scalar(EpsScalar(ComplexRational::i()), ctx);
        return NormalForm::generator(node.text, ctx);
    case K::Number: return NormalForm::scalar(EpsScalar(ComplexRational(parse_exact_rational(node.text))), ctx);
    case K::Add: return arg(0) + arg(1);
    case K::Sub: return arg(0) - arg(1);
    case K::Mul: return arg(0) * arg(1);
    case K::Neg: return -arg(0);
    case K::Commutator: return commutator(arg(0), arg(1));
    case K::Adjoint: return arg(0).adjoint();
    case K::Pow: {
        NormalForm base = arg(0);
        if (node.exponent < 0) base = inverse_of(base);
        return power(base, static_cast<unsigned>(std::labs(node.exponent)));
    }
    }
    throw DomainError("unknown expression node");
}

NormalForm parse_expr(std::string_view src, const AlgebraContext& ctx) { return evaluate(*parse_ast(src), ctx); }

} // namespace ncsurf
