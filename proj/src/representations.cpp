#include "ncsurf/representations.hpp"

#include "ncsurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ncsurf {

namespace {

using cd = std::complex<double>;
constexpr double kPi = std::numbers::pi;
const cd I{0.0, 1.0};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

void check_dimension(int n) {
    if (n < 2) throw InvalidSpec("dimension must be at least 2, got " + std::to_string(n));
    if (n > kMaxDimension)
        throw InvalidSpec("dimension " + std::to_string(n) + " exceeds the cap " + std::to_string(kMaxDimension));
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < kPi)) throw InvalidSpec("alpha must lie in (0, pi), got " + fmt(alpha));
}

Matrix unitary_diagonal(double beta_prime, double alpha, int first, int count) {
    Matrix U = Matrix::Zero(count, count);
    for (int j = 0; j < count; ++j)
        U(j, j) = std::polar(1.0, beta_prime + alpha / 2 + (first + j) * alpha);
    return U;
}

double frob(const Matrix& m) { return m.norm(); }

// Frobenius norm over the columns not listed in skip.
double frob_columns(const Matrix& m, const std::vector<int>& skip) {
    double acc = 0.0;
    for (int j = 0; j < m.cols(); ++j) {
        if (std::find(skip.begin(), skip.end(), j) != skip.end()) continue;
        acc += m.col(j).squaredNorm();
    }
    return std::sqrt(acc);
}

Matrix matrix_power(const Matrix& base, int p) {
    Matrix out = Matrix::Identity(base.rows(), base.cols());
    for (int t = 0; t < p; ++t) out = out * base;
    return out;
}

} // namespace

std::string family_name(Family f) {
    switch (f) {
    case Family::S2Min: return "s2min";
    case Family::S2NonMin: return "s2nonmin";
    case Family::T2Finite: return "t2finite";
    case Family::T2Window: return "t2window";
    case Family::FuzzySphere: return "fuzzysphere";
    case Family::NCTorusFinite: return "nctorus";
    }
    return "unknown";
}

Family parse_family(std::string_view name) {
    for (Family f : {Family::S2Min, Family::S2NonMin, Family::T2Finite, Family::T2Window, Family::FuzzySphere,
                     Family::NCTorusFinite})
        if (family_name(f) == name) return f;
    throw InvalidSpec("unknown family '" + std::string(name) + "'");
}

double ResidualReport::max() const {
    double m = 0.0;
    for (const auto& [name, v] : entries) m = std::max(m, v);
    return m;
}

double ResidualReport::at(std::string_view name) const {
    for (const auto& [key, v] : entries)
        if (key == name) return v;
    throw std::out_of_range("no residual named " + std::string(name));
}

double c_squared(double theta_prime, double R, double alpha) { return std::cos(theta_prime) / std::cos(alpha / 2) + R; }

double epsilon_of_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < kPi)) throw DomainError("alpha must lie in (0, pi), got " + fmt(alpha));
    return std::tan(alpha / 2);
}

ReprMatrices build_s2(const ReprSpec& spec) {
    if (spec.family != Family::S2Min && spec.family != Family::S2NonMin)
        throw InvalidSpec("build_s2 needs an S2 family, got " + family_name(spec.family));
    const int n = spec.n;
    check_dimension(n);
    check_alpha(spec.alpha);

    ReprMatrices m;
    m.spec = spec;
    // beta' and beta' + 2 pi give the same matrices; keep it in (-2 pi, 0].
    double bp = std::fmod(spec.beta_prime, 2 * kPi);
    if (bp > 0) bp -= 2 * kPi;
    if (bp <= -2 * kPi) bp += 2 * kPi;
    m.spec.beta_prime = bp;
    m.eps = std::tan(spec.alpha / 2);

    const double lo = c_squared(bp, spec.R, spec.alpha);
    const double hi = c_squared(bp + n * spec.alpha, spec.R, spec.alpha);
    if (std::abs(lo) > kEndpointTolerance)
        throw InvalidSpec("lower endpoint |C|^2 = " + fmt(lo) + " is not zero");
    if (std::abs(hi) > kEndpointTolerance)
        throw InvalidSpec("upper endpoint |C|^2 = " + fmt(hi) + " is not zero");

    m.U = unitary_diagonal(bp, spec.alpha, 0, n);
    m.Ap = Matrix::Zero(n, n);
    for (int j = 1; j < n; ++j) {
        const double c2 = c_squared(bp + j * spec.alpha, spec.R, spec.alpha);
        if (!(c2 > 0)) throw InvalidSpec("|C|^2 = " + fmt(c2) + " <= 0 at m = " + std::to_string(j));
        m.Ap(j, j - 1) = std::sqrt(c2);
    }
    m.Am = m.Ap.adjoint();
    return m;
}

ReprMatrices build_t2_finite(const ReprSpec& spec) {
    if (spec.family != Family::T2Finite)
        throw InvalidSpec("build_t2_finite needs family t2finite, got " + family_name(spec.family));
    const int n = spec.n;
    check_dimension(n);
    if (!spec.k) throw InvalidSpec("T2 representation needs k");
    const int k = *spec.k;
    if (!(k >= 1 && 2 * k < n))
        throw InvalidSpec("need 1 <= k < n/2, got n = " + std::to_string(n) + ", k = " + std::to_string(k));
    if (std::gcd(n, k) != 1)
        throw InvalidSpec("gcd(n, k) = " + std::to_string(std::gcd(n, k)) + ", need 1");
    const double alpha = 2 * kPi * k / n;
    if (spec.alpha != 0.0 && std::abs(spec.alpha - alpha) > 1e-12)
        throw InvalidSpec("alpha = " + fmt(spec.alpha) + " is not 2 pi k / n");
    const cd nu = spec.nu.value_or(1.0);
    if (std::abs(std::abs(nu) - 1.0) > 1e-12) throw InvalidSpec("nu must have unit modulus");

    ReprMatrices m;
    m.spec = spec;
    m.spec.alpha = alpha;
    m.spec.nu = nu;
    m.eps = std::tan(alpha / 2);
    const double bp = spec.beta_prime;

    m.U = unitary_diagonal(bp, alpha, 0, n);
    m.Ap = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const double c2 = c_squared(bp + j * alpha, spec.R, alpha);
        if (!(c2 > 0)) throw InvalidSpec("|C|^2 = " + fmt(c2) + " <= 0 at m = " + std::to_string(j));
        if (j == 0)
            m.Ap(0, n - 1) = std::conj(nu) * std::sqrt(c2);
        else
            m.Ap(j, j - 1) = std::sqrt(c2);
    }
    m.Am = m.Ap.adjoint();
    return m;
}

ReprMatrices build_t2_window(const ReprSpec& spec) {
    if (spec.family != Family::T2Window)
        throw InvalidSpec("build_t2_window needs family t2window, got " + family_name(spec.family));
    check_alpha(spec.alpha);
    const int M = spec.M.value_or((spec.n - 1) / 2);
    if (M < 1) throw InvalidSpec("window half-width must be at least 1");
    const int dim = 2 * M + 1;
    check_dimension(dim);
    const double sec = 1.0 / std::cos(spec.alpha / 2);
    if (spec.R < sec - kEndpointTolerance)
        throw InvalidSpec("R = " + fmt(spec.R) + " < sec(alpha/2) = " + fmt(sec) + ": some |C|^2 < 0");
    // A rational alpha / 2 pi with a small denominator repeats U eigenvalues inside the window.
    for (int q = 1; q < dim; ++q) {
        const double turns = q * spec.alpha / (2 * kPi);
        if (std::abs(turns - std::round(turns)) < 1e-9)
            throw InvalidSpec("alpha / 2 pi is rational with denominator " + std::to_string(q));
    }

    ReprMatrices m;
    m.spec = spec;
    m.spec.n = dim;
    m.spec.M = M;
    m.eps = std::tan(spec.alpha / 2);
    m.U = unitary_diagonal(spec.beta_prime, spec.alpha, -M, dim);
    m.Ap = Matrix::Zero(dim, dim);
    for (int j = 1; j < dim; ++j) {
        double c2 = c_squared(spec.beta_prime + (j - M) * spec.alpha, spec.R, spec.alpha);
        if (c2 < kEndpointTolerance) c2 = 0.0;
        m.Ap(j, j - 1) = std::sqrt(c2);
    }
    m.Am = m.Ap.adjoint();
    m.boundary = {0, dim - 1};
    return m;
}

ReprMatrices build(const ReprSpec& spec) {
    switch (spec.family) {
    case Family::S2Min:
    case Family::S2NonMin: return build_s2(spec);
    case Family::T2Finite: return build_t2_finite(spec);
    case Family::T2Window: return build_t2_window(spec);
    case Family::FuzzySphere: return build_fuzzy_sphere(spec.n);
    case Family::NCTorusFinite: break;
    }
    throw InvalidSpec("the nc torus is a pair of unitaries, not a representation of A(R)");
}

ReprMatrices build_fuzzy_sphere(int n) {
    if (n < 2) throw DomainError("fuzzy sphere needs n >= 2, got " + std::to_string(n));
    if (n > kMaxDimension) throw DomainError("dimension exceeds the cap");
    ReprMatrices m;
    m.spec.family = Family::FuzzySphere;
    m.spec.n = n;
    const double eps = 2.0 / std::sqrt(double(n) * n - 1.0);
    m.eps = eps;
    m.Ap = Matrix::Zero(n, n);
    m.Z = Matrix::Zero(n, n);
    for (int r = 0; r < n; ++r) {
        m.Z(r, r) = eps * (r - 0.5 * (n - 1));
        if (r + 1 < n) m.Ap(r + 1, r) = eps * std::sqrt(double(n - r - 1) * (r + 1));
    }
    m.Am = m.Ap.adjoint();
    return m;
}

TorusPair build_nc_torus(int n, int k, double beta, std::complex<double> nu) {
    if (n < 1 || k < 1) throw DomainError("nc torus needs positive n and k");
    if (std::gcd(n, k) != 1) throw DomainError("gcd(n, k) must be 1");
    if (n > kMaxDimension) throw DomainError("dimension exceeds the cap");
    TorusPair t;
    t.q = std::polar(1.0, 2 * kPi * k / n);
    t.U = Matrix::Zero(n, n);
    t.V = Matrix::Zero(n, n);
    for (int r = 0; r < n; ++r) {
        t.U(r, r) = std::polar(1.0, beta + 2 * kPi * r * k / n);
        if (r + 1 < n)
            t.V(r + 1, r) = 1.0;
        else
            t.V(0, r) = nu;
    }
    return t;
}

ResidualReport verify_torus(const TorusPair& t) {
    const Matrix Id = Matrix::Identity(t.U.rows(), t.U.cols());
    ResidualReport rep;
    rep.entries = {
        {"uv_qvu", frob(t.U * t.V - t.q * t.V * t.U)},
        {"unitary_u", frob(t.U * t.U.adjoint() - Id)},
        {"unitary_v", frob(t.V * t.V.adjoint() - Id)},
    };
    return rep;
}

Coordinates coordinates(const ReprMatrices& m) {
    Coordinates c;
    c.X = (m.Ap + m.Am) / 2.0;
    c.Y = (m.Ap - m.Am) / (2.0 * I);
    if (m.spec.family == Family::FuzzySphere) {
        c.Z = m.Z;
        c.W = Matrix::Zero(m.Z.rows(), m.Z.cols());
    } else {
        c.W = (m.U + m.U.adjoint()) / 2.0;
        c.Z = (m.U - m.U.adjoint()) / (2.0 * I);
    }
    return c;
}

ResidualReport verify_relations(const ReprMatrices& m) {
    const auto [X, Y, Z, W] = coordinates(m);
    const Matrix Id = Matrix::Identity(X.rows(), X.cols());
    const cd ie = I * m.eps;
    auto rel = [&](const Matrix& r) { return frob_columns(r, m.boundary); };
    ResidualReport rep;
    if (m.spec.family == Family::FuzzySphere) {
        rep.entries = {
            {"xy", rel(X * Y - Y * X - ie * Z)},
            {"yz", rel(Y * Z - Z * Y - ie * X)},
            {"zx", rel(Z * X - X * Z - ie * Y)},
            {"casimir", rel(X * X + Y * Y + Z * Z - Id)},
        };
    } else {
        rep.entries = {
            {"xy", rel(X * Y - Y * X - ie * Z)},
            {"yz", rel(Y * Z - Z * Y - ie * (W * X + X * W))},
            {"zx", rel(Z * X - X * Z - ie * (W * Y + Y * W))},
            {"sphere", rel(Z * Z + W * W - Id)},
            {"cassini", rel(X * X + Y * Y - m.spec.R * Id - W)},
            {"unitary", frob(m.U * m.U.adjoint() - Id)},
        };
    }
    rep.entries.emplace_back("herm_x", frob(X - X.adjoint()));
    rep.entries.emplace_back("herm_y", frob(Y - Y.adjoint()));
    rep.entries.emplace_back("herm_z", frob(Z - Z.adjoint()));
    return rep;
}

Matrix rep_evaluate(const NormalForm& f, const ReprMatrices& m) {
    if (m.spec.family == Family::FuzzySphere)
        throw DomainError("the fuzzy sphere is not a representation of A(R)");
    const double R = f.context().R.get_d();
    if (std::abs(R - m.spec.R) > 1e-12 * std::max(1.0, std::abs(R)))
        throw ContextMismatch("element has R = " + fmt(R) + " but the representation has R = " + fmt(m.spec.R));
    const int n = m.dim();
    Matrix out = Matrix::Zero(n, n);
    const Matrix Ud = m.U.adjoint();
    for (const auto& [key, coeff] : f.terms()) {
        const auto [r, s] = key;
        const Matrix ladder = r >= 0 ? matrix_power(m.Ap, r) : matrix_power(m.Am, -r);
        const Matrix wind = s >= 0 ? matrix_power(m.U, s) : matrix_power(Ud, -s);
        out += coeff.eval(m.eps) * (ladder * wind);
    }
    return out;
}

bool check_irreducible(const ReprMatrices& m) {
    const int n = m.dim();
    const Matrix& diag = m.spec.family == Family::FuzzySphere ? m.Z : m.U;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(diag(i, i) - diag(j, j)) < 1e-9) return false;
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    int components = n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(m.Ap(i, j)) > 1e-12) {
                int a = find(i), b = find(j);
                if (a != b) {
                    parent[a] = b;
                    --components;
                }
            }
    return components == 1;
}

std::complex<double> ladder_cycle_phase(const ReprMatrices& m) {
    // The diagonal of Am^n is the product of the cycle entries.
    const cd prod = matrix_power(m.Am, m.dim())(0, 0);
    if (std::abs(prod) == 0.0) throw DomainError("ladder does not close into a cycle");
    return prod / std::abs(prod);
}

ReprMatrices gauge_transform(const ReprMatrices& m, const std::vector<double>& phases) {
    if (static_cast<int>(phases.size()) != m.dim()) throw DomainError("one phase per basis vector required");
    Matrix D = Matrix::Zero(m.dim(), m.dim());
    for (int j = 0; j < m.dim(); ++j) D(j, j) = std::polar(1.0, phases[j]);
    ReprMatrices out = m;
    out.Ap = D * m.Ap * D.adjoint();
    out.Am = D * m.Am * D.adjoint();
    return out;
}

} // namespace ncsurf
