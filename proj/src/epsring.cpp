#include "ncsurf/epsring.hpp"

#include "ncsurf/errors.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

namespace ncsurf {

namespace {

using Poly = EpsScalar::Poly;

void trim(Poly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()));
    for (size_t k = 0; k < a.size(); ++k) out[k] += a[k];
    for (size_t k = 0; k < b.size(); ++k) out[k] += b[k];
    trim(out);
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    trim(out);
    return out;
}

// p * (1 + eps^2)^times
Poly times_one_plus_eps2(Poly p, int times) {
    for (int t = 0; t < times && !p.empty(); ++t) {
        Poly q(p.size() + 2);
        for (size_t k = 0; k < p.size(); ++k) {
            q[k] += p[k];
            q[k + 2] += p[k];
        }
        p = std::move(q);
    }
    return p;
}

// Exact division by (1 + eps^2) when the remainder vanishes.
std::optional<Poly> try_div_one_plus_eps2(const Poly& p) {
    if (p.size() < 3) return std::nullopt;
    Poly rem = p;
    Poly quot(p.size() - 2);
    for (size_t k = p.size() - 1; k >= 2; --k) {
        quot[k - 2] = rem[k];
        rem[k - 2] -= rem[k];
        rem[k] = ComplexRational();
    }
    if (!rem[0].is_zero() || !rem[1].is_zero()) return std::nullopt;
    trim(quot);
    return quot;
}

std::string rational_str(const mpq_class& q) { return q.get_str(); }

} // namespace

ComplexRational ComplexRational::inverse() const {
    mpq_class norm = re * re + im * im;
    if (sgn(norm) == 0) throw DomainError("inverse of zero complex rational");
    return {re / norm, -im / norm};
}

ComplexRational& ComplexRational::operator+=(const ComplexRational& o) {
    re += o.re;
    im += o.im;
    return *this;
}

ComplexRational& ComplexRational::operator-=(const ComplexRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
}

ComplexRational& ComplexRational::operator*=(const ComplexRational& o) {
    mpq_class r = re * o.re - im * o.im;
    mpq_class i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
}

std::string ComplexRational::to_string() const {
    if (sgn(im) == 0) return rational_str(re);
    std::string imag;
    if (im == 1)
        imag = "i";
    else if (im == -1)
        imag = "-i";
    else
        imag = rational_str(im) + "*i";
    if (sgn(re) == 0) return imag;
    std::string out = "(" + rational_str(re);
    if (sgn(im) < 0)
        out += " - " + imag.substr(1);
    else
        out += " + " + imag;
    return out + ")";
}

mpq_class parse_exact_rational(const std::string& text) {
    auto fail = [&]() -> mpq_class { throw DomainError("not a decimal or rational literal: '" + text + "'"); };
    if (text.empty()) return fail();
    if (auto slash = text.find('/'); slash != std::string::npos) {
        mpq_class num = parse_exact_rational(text.substr(0, slash));
        mpq_class den = parse_exact_rational(text.substr(slash + 1));
        if (sgn(den) == 0) return fail();
        return num / den;
    }
    size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (; pos < text.size(); ++pos) {
        char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            if (seen_point) ++frac_digits;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (digits.empty()) return fail();
    long exponent = 0;
    if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        size_t used = 0;
        try {
            exponent = std::stol(text.substr(pos), &used);
        } catch (const std::exception&) {
            return fail();
        }
        pos += used;
    }
    if (pos != text.size()) return fail();
    exponent -= frac_digits;
    mpz_class mantissa(digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    mpq_class value = exponent >= 0 ? mpq_class(mantissa * scale) : mpq_class(mantissa, scale);
    value.canonicalize();
    return negative ? mpq_class(-value) : value;
}

EpsScalar::EpsScalar(ComplexRational constant) {
    if (!constant.is_zero()) num_.push_back(std::move(constant));
}

EpsScalar EpsScalar::from_parts(Poly numerator, int denom_pow) {
    if (denom_pow < 0) {
        numerator = times_one_plus_eps2(std::move(numerator), -denom_pow);
        denom_pow = 0;
    }
    EpsScalar s;
    s.num_ = std::move(numerator);
    s.denom_pow_ = denom_pow;
    s.canonicalize();
    return s;
}

EpsScalar EpsScalar::eps() { return from_parts({ComplexRational(), ComplexRational(1)}, 0); }

EpsScalar EpsScalar::inv_one_plus_eps2() { return from_parts({ComplexRational(1)}, 1); }

EpsScalar EpsScalar::exp_i_alpha(long k) {
    // (1 +/- i eps)^{2|k|} is coprime to (1 + eps^2), so the result is already canonical.
    const ComplexRational lin = k >= 0 ? ComplexRational(0, 1) : ComplexRational(0, -1);
    Poly p{ComplexRational(1)};
    const Poly factor{ComplexRational(1), lin};
    const long power = 2 * std::labs(k);
    for (long t = 0; t < power; ++t) p = poly_mul(p, factor);
    EpsScalar s;
    s.num_ = std::move(p);
    s.denom_pow_ = static_cast<int>(std::labs(k));
    return s;
}

void EpsScalar::canonicalize() {
    trim(num_);
    if (num_.empty()) {
        denom_pow_ = 0;
        return;
    }
    while (denom_pow_ > 0) {
        auto q = try_div_one_plus_eps2(num_);
        if (!q) break;
        num_ = std::move(*q);
        --denom_pow_;
    }
}

EpsScalar EpsScalar::conj() const {
    EpsScalar s = *this;
    for (auto& c : s.num_) c = c.conj();
    return s;
}

EpsScalar EpsScalar::div_eps() const {
    if (num_.empty()) return {};
    if (!num_.front().is_zero())
        throw NotDivisible("scalar does not vanish at eps = 0: " + to_string());
    return from_parts(Poly(num_.begin() + 1, num_.end()), denom_pow_);
}

std::optional<EpsScalar> EpsScalar::inverse() const {
    if (num_.empty()) return std::nullopt;
    Poly p = num_;
    int factors = 0;
    while (auto q = try_div_one_plus_eps2(p)) {
        p = std::move(*q);
        ++factors;
    }
    if (p.size() != 1) return std::nullopt;
    return from_parts({p.front().inverse()}, factors - denom_pow_);
}

std::complex<double> EpsScalar::eval(double eps) const {
    std::complex<double> acc = 0.0;
    for (auto it = num_.rbegin(); it != num_.rend(); ++it) acc = acc * eps + it->to_complex();
    return acc / std::pow(1.0 + eps * eps, denom_pow_);
}

ComplexRational EpsScalar::at_zero() const { return num_.empty() ? ComplexRational() : num_.front(); }

std::string EpsScalar::to_string() const {
    if (num_.empty()) return "0";
    std::string poly;
    int terms = 0;
    for (size_t k = 0; k < num_.size(); ++k) {
        if (num_[k].is_zero()) continue;
        std::string coef = num_[k].to_string();
        std::string mono = k == 0 ? "" : (k == 1 ? "eps" : "eps^" + std::to_string(k));
        std::string term;
        if (mono.empty())
            term = coef;
        else if (coef == "1")
            term = mono;
        else if (coef == "-1")
            term = "-" + mono;
        else
            term = coef + "*" + mono;
        if (terms > 0) {
            if (term.front() == '-')
                poly += " - " + term.substr(1);
            else
                poly += " + " + term;
        } else {
            poly = term;
        }
        ++terms;
    }
    if (denom_pow_ == 0) return terms > 1 ? "(" + poly + ")" : poly;
    return "(" + poly + ")*(1+eps^2)^-" + std::to_string(denom_pow_);
}

EpsScalar& EpsScalar::operator+=(const EpsScalar& o) {
    if (o.num_.empty()) return *this;
    if (num_.empty()) return *this = o;
    const int m = std::max(denom_pow_, o.denom_pow_);
    num_ = poly_add(times_one_plus_eps2(std::move(num_), m - denom_pow_),
                    times_one_plus_eps2(o.num_, m - o.denom_pow_));
    denom_pow_ = m;
    canonicalize();
    return *this;
}

EpsScalar& EpsScalar::operator-=(const EpsScalar& o) { return *this += -o; }

EpsScalar& EpsScalar::operator*=(const EpsScalar& o) {
    num_ = poly_mul(num_, o.num_);
    denom_pow_ += o.denom_pow_;
    canonicalize();
    return *this;
}

EpsScalar operator-(const EpsScalar& a) {
    EpsScalar s = a;
    for (auto& c : s.num_) c = -c;
    return s;
}

std::ostream& operator<<(std::ostream& os, const ComplexRational& c) { return os << c.to_string(); }

std::ostream& operator<<(std::ostream& os, const EpsScalar& s) { return os << s.to_string(); }

} // namespace ncsurf
