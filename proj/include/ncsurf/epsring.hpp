#pragma once

// Exact scalars p(eps) / (1 + eps^2)^m over the complex rationals.
//
// These are the coefficients xi(eps) of the normal form of A(R). The
// element eps is central and self-adjoint; the pseudo-element alpha with
// eps = tan(alpha / 2) only enters through e^{i k alpha}, which is
// (1 + i eps)^{2k} / (1 + eps^2)^k and therefore lives in this ring.

#include <gmpxx.h>

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ncsurf {

struct ComplexRational {
    mpq_class re;
    mpq_class im;

    ComplexRational() = default;
    ComplexRational(mpq_class real, mpq_class imag = 0) : re(std::move(real)), im(std::move(imag)) {
        re.canonicalize();
        im.canonicalize();
    }
    ComplexRational(long real) : re(real), im(0) {}

    static ComplexRational i() { return {0, 1}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    ComplexRational conj() const { return {re, -im}; }
    /// Multiplicative inverse; the value must be nonzero.
    ComplexRational inverse() const;
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
    std::string to_string() const;

    ComplexRational& operator+=(const ComplexRational& o);
    ComplexRational& operator-=(const ComplexRational& o);
    ComplexRational& operator*=(const ComplexRational& o);

    friend ComplexRational operator+(ComplexRational a, const ComplexRational& b) { return a += b; }
    friend ComplexRational operator-(ComplexRational a, const ComplexRational& b) { return a -= b; }
    friend ComplexRational operator*(ComplexRational a, const ComplexRational& b) { return a *= b; }
    friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

/// Parse a decimal or rational literal ("-0.557", "1e-3", "3/4") into an exact rational.
mpq_class parse_exact_rational(const std::string& text);

/// Immutable scalar p(eps) / (1 + eps^2)^m kept in canonical form:
/// trailing zero coefficients are trimmed, and either m == 0 or p is not
/// divisible by (1 + eps^2). Canonical forms compare syntactically.
class EpsScalar {
public:
    using Poly = std::vector<ComplexRational>;

    EpsScalar() = default;
    EpsScalar(ComplexRational constant);
    EpsScalar(long constant) : EpsScalar(ComplexRational(constant)) {}

    /// Canonicalizing constructor: coefficients in ascending powers of eps.
    static EpsScalar from_parts(Poly numerator, int denom_pow);

    static EpsScalar eps();
    /// (1 + eps^2)^{-1}
    static EpsScalar inv_one_plus_eps2();
    /// e^{i k alpha} with eps = tan(alpha / 2).
    static EpsScalar exp_i_alpha(long k);

    const Poly& numerator() const { return num_; }
    int denom_pow() const { return denom_pow_; }
    bool is_zero() const { return num_.empty(); }

    EpsScalar conj() const;
    /// Exact quotient by eps. Throws NotDivisible when the constant term is nonzero.
    EpsScalar div_eps() const;
    /// Multiplicative inverse if this is a unit c (1 + eps^2)^j of the ring.
    std::optional<EpsScalar> inverse() const;

    std::complex<double> eval(double eps) const;
    /// Exact value at eps = 0.
    ComplexRational at_zero() const;

    /// Re-parseable rendering, e.g. "(1 - eps^2 + 2*i*eps)*(1+eps^2)^-1".
    std::string to_string() const;

    EpsScalar& operator+=(const EpsScalar& o);
    EpsScalar& operator-=(const EpsScalar& o);
    EpsScalar& operator*=(const EpsScalar& o);

    friend EpsScalar operator+(EpsScalar a, const EpsScalar& b) { return a += b; }
    friend EpsScalar operator-(EpsScalar a, const EpsScalar& b) { return a -= b; }
    friend EpsScalar operator*(EpsScalar a, const EpsScalar& b) { return a *= b; }
    friend EpsScalar operator-(const EpsScalar& a);
    friend bool operator==(const EpsScalar& a, const EpsScalar& b) {
        return a.denom_pow_ == b.denom_pow_ && a.num_ == b.num_;
    }

private:
    void canonicalize();

    Poly num_;
    int denom_pow_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ComplexRational& c);
std::ostream& operator<<(std::ostream& os, const EpsScalar& s);

} // namespace ncsurf
