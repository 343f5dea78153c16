#pragma once

// The algebra A(R) stored as unique normal forms
//
//     f = sum_{r >= 0, s} ap^r u^s xi_{r,s}(eps) + sum_{r >= 1, s} am^r u^s xi_{-r,s}(eps)
//
// A term is keyed by (r, s): r > 0 is ap^r, r < 0 is am^{-r}; s < 0 is a
// power of u^{-1} = u^dagger. The product is the rewriting engine: u
// commutes past ladder factors with a phase e^{i s r alpha}, and opposite
// ladder pairs contract innermost-first via
//
//     ap am = 1/2 (1 - i eps) u + 1/2 (1 + i eps) u^{-1} + R
//     am ap = 1/2 (1 + i eps) u + 1/2 (1 - i eps) u^{-1} + R

#include "ncsurf/epsring.hpp"

#include <complex>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace ncsurf {

struct AlgebraContext {
    mpq_class R;

    friend bool operator==(const AlgebraContext& a, const AlgebraContext& b) { return a.R == b.R; }
};

/// (ladder index r, winding s)
using TermKey = std::pair<int, int>;

class NormalForm {
public:
    using Terms = std::map<TermKey, EpsScalar>;

    explicit NormalForm(AlgebraContext ctx) : ctx_(std::move(ctx)) {}

    /// One of x, y, z, w, u, u_inv (alias ud), ap, am, eps, one.
    static NormalForm generator(std::string_view name, const AlgebraContext& ctx);
    static NormalForm scalar(EpsScalar value, const AlgebraContext& ctx);
    static NormalForm monomial(int r, int s, EpsScalar coeff, const AlgebraContext& ctx);

    const AlgebraContext& context() const { return ctx_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    NormalForm adjoint() const;
    std::map<TermKey, std::complex<double>> eval_numeric(double eps) const;

    /// Re-parseable rendering; "0" for the zero element.
    std::string to_string() const;

    NormalForm& operator+=(const NormalForm& o);
    NormalForm& operator-=(const NormalForm& o);
    NormalForm& operator*=(const EpsScalar& c);

    friend NormalForm operator+(NormalForm a, const NormalForm& b) { return a += b; }
    friend NormalForm operator-(NormalForm a, const NormalForm& b) { return a -= b; }
    friend NormalForm operator-(const NormalForm& a);
    friend NormalForm operator*(const NormalForm& f, const NormalForm& g);
    friend NormalForm operator*(NormalForm f, const EpsScalar& c) { return f *= c; }
    friend NormalForm operator*(const EpsScalar& c, NormalForm f) { return f *= c; }
    friend bool operator==(const NormalForm& a, const NormalForm& b) {
        return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
    }

private:
    void add_term(const TermKey& key, const EpsScalar& value);

    AlgebraContext ctx_;
    Terms terms_;
};

NormalForm commutator(const NormalForm& f, const NormalForm& g);
NormalForm power(const NormalForm& f, unsigned exponent);

/// Element of C_0(M(R)): the image of pi, i.e. a normal form at eps = 0.
/// Keys are the same (r, s) monomials, now commuting, with
/// ap am = (u + u^{-1}) / 2 + R.
class CommutativePoly {
public:
    using Terms = std::map<TermKey, ComplexRational>;

    explicit CommutativePoly(mpq_class R) : R_(std::move(R)) {}
    CommutativePoly(mpq_class R, Terms terms);

    const mpq_class& R() const { return R_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    CommutativePoly conj() const;
    /// Value at the Darboux chart point: ap -> rho e^{-iq}, am -> rho e^{iq}, u -> e^{2ip},
    /// rho = (R + cos 2p)^{1/2}.
    std::complex<double> eval_chart(double p, double q) const;
    std::string to_string() const;

    CommutativePoly& operator+=(const CommutativePoly& o);
    friend CommutativePoly operator+(CommutativePoly a, const CommutativePoly& b) { return a += b; }
    friend CommutativePoly operator-(CommutativePoly a, const CommutativePoly& b);
    friend CommutativePoly operator*(const CommutativePoly& a, const CommutativePoly& b);
    friend CommutativePoly operator*(const ComplexRational& c, CommutativePoly a);
    friend bool operator==(const CommutativePoly& a, const CommutativePoly& b) {
        return a.R_ == b.R_ && a.terms_ == b.terms_;
    }

private:
    void add_term(const TermKey& key, const ComplexRational& value);

    mpq_class R_;
    Terms terms_;
};

/// pi: eps -> 0, coefficient-wise.
CommutativePoly nf_pi(const NormalForm& f);

/// {pi f, pi g} = pi((1 / i eps) [f, g]). Throws NotDivisible if [f, g] is not O(eps).
CommutativePoly nf_poisson(const NormalForm& f, const NormalForm& g);

std::ostream& operator<<(std::ostream& os, const NormalForm& f);
std::ostream& operator<<(std::ostream& os, const CommutativePoly& p);

} // namespace ncsurf
