#include "ncsurf/ncalgebra.hpp"

#include "ncsurf/errors.hpp"

#include <cmath>
#include <ostream>

namespace ncsurf {

namespace {

void check_same(const AlgebraContext& a, const AlgebraContext& b) {
    if (!(a == b))
        throw ContextMismatch("algebra elements for R = " + a.R.get_str() + " and R = " + b.R.get_str());
}

EpsScalar half(ComplexRational c) { return EpsScalar(c * ComplexRational(mpq_class(1, 2))); }

// Coefficients c_t of u^t in the contraction of an adjacent ladder pair.
// leading_plus: the pair is ap am (otherwise am ap).
std::map<int, EpsScalar> contraction(bool leading_plus, const mpq_class& R) {
    const EpsScalar eps = EpsScalar::eps();
    const EpsScalar i_eps = EpsScalar(ComplexRational::i()) * eps;
    const EpsScalar plus = half(1) + half(1) * i_eps;  // (1 + i eps) / 2
    const EpsScalar minus = half(1) - half(1) * i_eps; // (1 - i eps) / 2
    std::map<int, EpsScalar> c;
    c[1] = leading_plus ? minus : plus;
    c[-1] = leading_plus ? plus : minus;
    if (sgn(R) != 0) c[0] = EpsScalar(ComplexRational(R));
    return c;
}

using LadderCache = std::map<std::pair<int, int>, NormalForm::Terms>;

// L_a L_b in normal form, L_r = ap^r (r > 0), am^{-r} (r < 0).
const NormalForm::Terms& ladder_product(int a, int b, const mpq_class& R, LadderCache& cache) {
    auto key = std::make_pair(a, b);
    if (auto it = cache.find(key); it != cache.end()) return it->second;

    NormalForm::Terms out;
    if (a == 0 || b == 0 || (a > 0) == (b > 0)) {
        out[{a + b, 0}] = EpsScalar(1);
        return cache[key] = std::move(out);
    }
    // L_a L_b = L_{a'} (sum_t c_t u^t) L_{b'} = sum_t c_t L_{a'} L_{b'} u^t e^{i t b' alpha}
    const bool leading_plus = a > 0;
    const int a_inner = leading_plus ? a - 1 : a + 1;
    const int b_inner = leading_plus ? b + 1 : b - 1;
    const NormalForm::Terms inner = ladder_product(a_inner, b_inner, R, cache);
    for (const auto& [t, ct] : contraction(leading_plus, R)) {
        const EpsScalar coeff = ct * EpsScalar::exp_i_alpha(static_cast<long>(t) * b_inner);
        for (const auto& [k, v] : inner) {
            TermKey shifted{k.first, k.second + t};
            EpsScalar add = v * coeff;
            auto it = out.find(shifted);
            if (it == out.end()) {
                if (!add.is_zero()) out.emplace(shifted, std::move(add));
            } else {
                it->second += add;
                if (it->second.is_zero()) out.erase(it);
            }
        }
    }
    return cache[key] = std::move(out);
}

std::string monomial_string(const TermKey& key) {
    auto [r, s] = key;
    std::string out;
    auto factor = [&](const char* name, int p) {
        if (p == 0) return;
        if (!out.empty()) out += "*";
        out += name;
        if (p != 1) out += "^" + std::to_string(p);
    };
    factor(r > 0 ? "ap" : "am", std::abs(r));
    factor(s > 0 ? "u" : "ud", std::abs(s));
    return out;
}

std::string join_terms(const std::vector<std::pair<std::string, std::string>>& parts) {
    // parts: (coefficient, monomial)
    if (parts.empty()) return "0";
    std::string out;
    for (const auto& [coef, mono] : parts) {
        std::string term;
        if (mono.empty())
            term = coef;
        else if (coef == "1")
            term = mono;
        else if (coef == "-1")
            term = "-" + mono;
        else
            term = coef + "*" + mono;
        if (out.empty())
            out = term;
        else if (term.front() == '-')
            out += " - " + term.substr(1);
        else
            out += " + " + term;
    }
    return out;
}

} // namespace

NormalForm NormalForm::generator(std::string_view name, const AlgebraContext& ctx) {
    const ComplexRational h(mpq_class(1, 2));
    const ComplexRational ih(0, mpq_class(1, 2));
    NormalForm f(ctx);
    if (name == "x") {
        f.add_term({1, 0}, h);
        f.add_term({-1, 0}, h);
    } else if (name == "y") {
        f.add_term({1, 0}, -ih);
        f.add_term({-1, 0}, ih);
    } else if (name == "w") {
        f.add_term({0, 1}, h);
        f.add_term({0, -1}, h);
    } else if (name == "z") {
        f.add_term({0, 1}, -ih);
        f.add_term({0, -1}, ih);
    } else if (name == "u") {
        f.add_term({0, 1}, 1);
    } else if (name == "u_inv" || name == "ud") {
        f.add_term({0, -1}, 1);
    } else if (name == "ap") {
        f.add_term({1, 0}, 1);
    } else if (name == "am") {
        f.add_term({-1, 0}, 1);
    } else if (name == "eps") {
        f.add_term({0, 0}, EpsScalar::eps());
    } else if (name == "one") {
        f.add_term({0, 0}, 1);
    } else {
        throw UnknownGenerator("unknown generator '" + std::string(name) + "'");
    }
    return f;
}

NormalForm NormalForm::scalar(EpsScalar value, const AlgebraContext& ctx) {
    return monomial(0, 0, std::move(value), ctx);
}

NormalForm NormalForm::monomial(int r, int s, EpsScalar coeff, const AlgebraContext& ctx) {
    NormalForm f(ctx);
    f.add_term({r, s}, coeff);
    return f;
}

void NormalForm::add_term(const TermKey& key, const EpsScalar& value) {
    if (value.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, value);
        return;
    }
    it->second += value;
    if (it->second.is_zero()) terms_.erase(it);
}

NormalForm& NormalForm::operator+=(const NormalForm& o) {
    check_same(ctx_, o.ctx_);
    for (const auto& [k, v] : o.terms_) add_term(k, v);
    return *this;
}

NormalForm& NormalForm::operator-=(const NormalForm& o) { return *this += -o; }

NormalForm& NormalForm::operator*=(const EpsScalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [k, v] : terms_) v *= c;
    return *this;
}

NormalForm operator-(const NormalForm& a) {
    NormalForm out = a;
    for (auto& [k, v] : out.terms_) v = -v;
    return out;
}

NormalForm operator*(const NormalForm& f, const NormalForm& g) {
    check_same(f.ctx_, g.ctx_);
    NormalForm out(f.ctx_);
    LadderCache cache;
    for (const auto& [kf, vf] : f.terms_) {
        for (const auto& [kg, vg] : g.terms_) {
            // L_r1 u^s1 xi1 L_r2 u^s2 xi2 = L_r1 L_r2 u^{s1+s2} e^{i s1 r2 alpha} xi1 xi2
            const EpsScalar coeff =
                vf * vg * EpsScalar::exp_i_alpha(static_cast<long>(kf.second) * kg.first);
            for (const auto& [k, v] : ladder_product(kf.first, kg.first, f.ctx_.R, cache))
                out.add_term({k.first, k.second + kf.second + kg.second}, v * coeff);
        }
    }
    return out;
}

NormalForm NormalForm::adjoint() const {
    // (L_r u^s xi)^dagger = conj(xi) u^{-s} L_{-r} = L_{-r} u^{-s} conj(xi) e^{i r s alpha}
    NormalForm out(ctx_);
    for (const auto& [k, v] : terms_)
        out.add_term({-k.first, -k.second},
                     v.conj() * EpsScalar::exp_i_alpha(static_cast<long>(k.first) * k.second));
    return out;
}

std::map<TermKey, std::complex<double>> NormalForm::eval_numeric(double eps) const {
    std::map<TermKey, std::complex<double>> out;
    for (const auto& [k, v] : terms_) out.emplace(k, v.eval(eps));
    return out;
}

std::string NormalForm::to_string() const {
    std::vector<std::pair<std::string, std::string>> parts;
    for (const auto& [k, v] : terms_) parts.emplace_back(v.to_string(), monomial_string(k));
    return join_terms(parts);
}

NormalForm commutator(const NormalForm& f, const NormalForm& g) { return f * g - g * f; }

NormalForm power(const NormalForm& f, unsigned exponent) {
    NormalForm out = NormalForm::generator("one", f.context());
    NormalForm base = f;
    while (exponent > 0) {
        if (exponent & 1u) out = out * base;
        exponent >>= 1u;
        if (exponent > 0) base = base * base;
    }
    return out;
}

CommutativePoly::CommutativePoly(mpq_class R, Terms terms) : R_(std::move(R)) {
    for (const auto& [k, v] : terms) add_term(k, v);
}

void CommutativePoly::add_term(const TermKey& key, const ComplexRational& value) {
    if (value.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, value);
        return;
    }
    it->second += value;
    if (it->second.is_zero()) terms_.erase(it);
}

CommutativePoly& CommutativePoly::operator+=(const CommutativePoly& o) {
    if (R_ != o.R_) throw ContextMismatch("commutative polynomials for different R");
    for (const auto& [k, v] : o.terms_) add_term(k, v);
    return *this;
}

CommutativePoly operator-(CommutativePoly a, const CommutativePoly& b) {
    return a += ComplexRational(-1) * b;
}

CommutativePoly operator*(const ComplexRational& c, CommutativePoly a) {
    CommutativePoly out(a.R_);
    for (const auto& [k, v] : a.terms_) out.add_term(k, c * v);
    return out;
}

CommutativePoly operator*(const CommutativePoly& a, const CommutativePoly& b) {
    if (a.R_ != b.R_) throw ContextMismatch("commutative polynomials for different R");
    // ap am = u/2 + u^{-1}/2 + R; expand (u/2 + u^{-1}/2 + R)^p for p contracted pairs.
    std::map<int, std::map<int, ComplexRational>> contracted; // p -> (t -> coeff)
    auto pair_power = [&](int p) -> const std::map<int, ComplexRational>& {
        auto it = contracted.find(p);
        if (it != contracted.end()) return it->second;
        std::map<int, ComplexRational> acc{{0, ComplexRational(1)}};
        const ComplexRational h(mpq_class(1, 2));
        for (int step = 0; step < p; ++step) {
            std::map<int, ComplexRational> next;
            for (const auto& [t, c] : acc) {
                next[t + 1] += c * h;
                next[t - 1] += c * h;
                next[t] += c * ComplexRational(a.R_);
            }
            acc = std::move(next);
        }
        return contracted[p] = std::move(acc);
    };
    CommutativePoly out(a.R_);
    for (const auto& [ka, va] : a.terms_) {
        for (const auto& [kb, vb] : b.terms_) {
            const ComplexRational c = va * vb;
            const int r = ka.first + kb.first;
            const int s = ka.second + kb.second;
            const bool opposite = (ka.first > 0 && kb.first < 0) || (ka.first < 0 && kb.first > 0);
            if (!opposite) {
                out.add_term({r, s}, c);
                continue;
            }
            const int p = std::min(std::abs(ka.first), std::abs(kb.first));
            for (const auto& [t, ct] : pair_power(p)) out.add_term({r, s + t}, c * ct);
        }
    }
    return out;
}

CommutativePoly CommutativePoly::conj() const {
    // conj(ap^r u^s) = am^r u^{-s} at eps = 0
    CommutativePoly out(R_);
    for (const auto& [k, v] : terms_) out.add_term({-k.first, -k.second}, v.conj());
    return out;
}

std::complex<double> CommutativePoly::eval_chart(double p, double q) const {
    const double rho2 = R_.get_d() + std::cos(2 * p);
    const double rho = std::sqrt(std::max(rho2, 0.0));
    std::complex<double> acc = 0.0;
    for (const auto& [k, v] : terms_) {
        const auto [r, s] = k;
        // ap^r -> rho^r e^{-i r q}; am^r -> rho^r e^{+i r q}
        const std::complex<double> ladder = std::pow(rho, std::abs(r)) * std::polar(1.0, -r * q);
        acc += v.to_complex() * ladder * std::polar(1.0, 2.0 * s * p);
    }
    return acc;
}

std::string CommutativePoly::to_string() const {
    std::vector<std::pair<std::string, std::string>> parts;
    for (const auto& [k, v] : terms_) parts.emplace_back(v.to_string(), monomial_string(k));
    return join_terms(parts);
}

CommutativePoly nf_pi(const NormalForm& f) {
    CommutativePoly::Terms t;
    for (const auto& [k, v] : f.terms()) t.emplace(k, v.at_zero());
    return CommutativePoly(f.context().R, std::move(t));
}

CommutativePoly nf_poisson(const NormalForm& f, const NormalForm& g) {
    const NormalForm c = commutator(f, g);
    const EpsScalar minus_i(ComplexRational(0, -1));
    CommutativePoly::Terms t;
    for (const auto& [k, v] : c.terms()) t.emplace(k, (v.div_eps() * minus_i).at_zero());
    return CommutativePoly(f.context().R, std::move(t));
}

std::ostream& operator<<(std::ostream& os, const NormalForm& f) { return os << f.to_string(); }

std::ostream& operator<<(std::ostream& os, const CommutativePoly& p) { return os << p.to_string(); }

} // namespace ncsurf
