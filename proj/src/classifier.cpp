#include "ncsurf/classifier.hpp"

#include "ncsurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <tuple>

namespace ncsurf {

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
double bisect(F&& f, double lo, double hi) {
    double flo = f(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return std::abs(f(lo)) <= std::abs(f(hi)) ? lo : hi;
}

// Indices m = 1..n-1 where cos(beta' + m alpha) + R cos(alpha/2) > 0 fails.
std::vector<int> s2_failures(double R, int n, double alpha, double bp) {
    std::vector<int> bad;
    const double shift = R * std::cos(alpha / 2);
    for (int m = 1; m < n; ++m)
        if (!(std::cos(bp + m * alpha) + shift > 0)) bad.push_back(m);
    return bad;
}

bool repeated_eigenvalue(double alpha, int n) {
    for (int q = 1; q < n; ++q) {
        const double turns = q * alpha / (2 * kPi);
        if (std::abs(turns - std::round(turns)) < 1e-9) return true;
    }
    return false;
}

void apply_filter(SolutionRecord& rec) {
    if (repeated_eigenvalue(rec.alpha, rec.n)) {
        rec.exists = false;
        rec.reject_reason = "repeated U eigenvalue";
        return;
    }
    const std::vector<int> bad = s2_failures(rec.R, rec.n, rec.alpha, rec.beta_prime);
    if (bad.empty()) {
        rec.exists = true;
        return;
    }
    rec.exists = false;
    rec.failing_index = bad.front();
    std::string list;
    for (int m : bad) list += (list.empty() ? "" : ", ") + std::to_string(m);
    rec.reject_reason = "inequality fails at m = " + list;
}

// k with beta' = pi k - n alpha / 2 in (-3 pi/2, -pi/2)
int branch_a_k(double alpha, int n) { return static_cast<int>(std::floor(n * alpha / (2 * kPi) - 0.5)); }

double branch_a_residual(double alpha, int n, int k, double R) {
    return std::cos(kPi * k - n * alpha / 2) + R * std::cos(alpha / 2);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

} // namespace

ReprSpec SolutionRecord::to_spec() const {
    ReprSpec s;
    s.family = family;
    s.R = R;
    s.n = n;
    s.alpha = alpha;
    s.beta_prime = beta_prime;
    if (family == Family::T2Finite) s.k = k;
    return s;
}

std::string window_kind_name(WindowKind k) {
    switch (k) {
    case WindowKind::None: return "none";
    case WindowKind::Restricted: return "restricted";
    case WindowKind::Full: return "full";
    }
    return "none";
}

std::string region_name(RegionLabel r) {
    switch (r) {
    case RegionLabel::Null: return "Null";
    case RegionLabel::Point: return "Point";
    case RegionLabel::Sphere: return "Sphere";
    case RegionLabel::Variety: return "Variety";
    case RegionLabel::SphereTorus: return "SphereTorus";
    case RegionLabel::SphereTorusBoundary: return "SphereTorusBoundary";
    case RegionLabel::Torus: return "Torus";
    }
    return "Null";
}

double r_hat(double alpha, int n) { return -std::cos(n * alpha / 2) / std::cos(alpha / 2); }

SolutionRecord solve_minimal_s2(double R, int n) {
    SolutionRecord rec;
    rec.family = Family::S2Min;
    rec.R = R;
    rec.n = n;
    if (n < 2) {
        rec.reject_reason = "n must be at least 2";
        return rec;
    }
    const double upper = 1.0 / std::cos(kPi / n);
    if (!(R > -1.0)) {
        rec.reject_reason = "R <= -1";
        return rec;
    }
    if (!(R < upper)) {
        rec.reject_reason = "R >= sec(pi/n) = " + fmt(upper);
        return rec;
    }
    const double hi = std::min(2 * kPi / n, kPi);
    rec.alpha = bisect([&](double a) { return r_hat(a, n) - R; }, 0.0, hi);
    rec.beta_prime = -n * rec.alpha / 2;
    rec.exists = true;
    return rec;
}

std::vector<SolutionRecord> enumerate_s2_nonminimal(double R, int n, int grid) {
    std::vector<SolutionRecord> out;
    if (n < 2) return out;
    if (grid < 2) throw DomainError("grid needs at least 2 points");

    // Branch A: beta' = pi k - n alpha / 2 on a grid of (2 pi / n, pi).
    const double a = 2 * kPi / n, b = kPi;
    if (a < b) {
        auto alpha_at = [&](int j) { return a + (b - a) * j / grid; };
        int k_prev = branch_a_k(alpha_at(1), n);
        double g_prev = branch_a_residual(alpha_at(1), n, k_prev, R);
        for (int j = 1; j < grid; ++j) {
            const double lo = alpha_at(j);
            std::optional<double> root;
            int k_root = k_prev;
            if (g_prev == 0.0) root = lo;
            if (j + 1 < grid) {
                const double hi = alpha_at(j + 1);
                const int k_hi = branch_a_k(hi, n);
                const double g_hi = branch_a_residual(hi, n, k_hi, R);
                // a change of k flips beta' by pi: a jump, not a root
                if (!root && k_hi == k_prev && (g_prev < 0) != (g_hi < 0) && g_hi != 0.0)
                    root = bisect([&](double al) { return branch_a_residual(al, n, k_prev, R); }, lo, hi);
                k_prev = k_hi;
                g_prev = g_hi;
            }
            if (root) {
                SolutionRecord rec;
                rec.family = Family::S2NonMin;
                rec.R = R;
                rec.n = n;
                rec.alpha = *root;
                rec.k = k_root;
                rec.beta_prime = kPi * k_root - n * *root / 2;
                rec.branch = "A";
                apply_filter(rec);
                out.push_back(std::move(rec));
            }
        }
    }

    // Branch B: n alpha = 2 pi k'.
    for (int kp = 1; 2 * kp < n; ++kp) {
        if (std::gcd(kp, n) != 1) continue;
        const double alpha = 2 * kPi * kp / n;
        const double c = -R * std::cos(kPi * kp / n);
        if (c < -1.0 || c > 1.0) continue;
        std::vector<double> roots{-std::acos(c)};
        const double second = std::acos(c) - 2 * kPi;
        if (second > -2 * kPi) roots.push_back(second);
        for (double bp : roots) {
            SolutionRecord rec;
            rec.family = Family::S2NonMin;
            rec.R = R;
            rec.n = n;
            rec.alpha = alpha;
            rec.beta_prime = bp;
            rec.k = kp;
            rec.branch = "B";
            apply_filter(rec);
            out.push_back(std::move(rec));
        }
    }
    return out;
}

BetaWindow t2_beta_window(double R, int n, int k) {
    if (!(k >= 1 && 2 * k < n)) throw DomainError("need 1 <= k < n/2");
    if (std::gcd(n, k) != 1) throw DomainError("gcd(n, k) must be 1");
    BetaWindow w;
    const double ck = std::cos(kPi * k / n);
    w.threshold = k == 1 ? 1.0 : std::cos(kPi / n) / ck;
    const double sec = 1.0 / ck;
    const double arg = R * ck;
    if (arg >= -1.0 && arg <= 1.0) w.delta = 2 * std::acos(arg);
    if (R <= w.threshold) {
        w.kind = WindowKind::None;
    } else if (R <= sec) {
        w.kind = WindowKind::Restricted;
        w.lower = kPi - 2 * kPi / n + w.delta / 2;
        w.upper = kPi - w.delta / 2;
    } else {
        w.kind = WindowKind::Full;
        w.delta = 0.0;
        w.lower = kPi - 2 * kPi / n;
        w.upper = kPi;
    }
    return w;
}

bool t2_inequality_holds(double R, int n, int k, double beta_prime) {
    const double alpha = 2 * kPi * k / n;
    const double shift = R * std::cos(alpha / 2);
    for (int m = 0; m < n; ++m)
        if (!(std::cos(beta_prime + m * alpha) + shift > 0)) return false;
    return true;
}

RegionClass classify_region(double R, double eps) {
    if (!(eps > 0)) throw DomainError("eps must be positive");
    RegionClass rc;
    rc.R_eps = std::sqrt(1 + eps * eps);
    auto near = [](double a, double b) { return std::abs(a - b) <= kRegionTolerance * std::max(1.0, std::abs(b)); };
    RegionFlags& f = rc.flags;
    if (near(R, -1.0)) {
        rc.label = RegionLabel::Point;
    } else if (R < -1.0) {
        rc.label = RegionLabel::Null;
    } else if (near(R, 1.0)) {
        rc.label = RegionLabel::Variety;
        f.minimal_s2 = true;
    } else if (R < 1.0) {
        rc.label = RegionLabel::Sphere;
        f.minimal_s2 = true;
    } else if (near(R, rc.R_eps)) {
        rc.label = RegionLabel::SphereTorusBoundary;
        f.nonminimal_s2 = f.finite_t2 = f.semi_infinite_t2 = f.infinite_t2 = true;
    } else if (R < rc.R_eps) {
        rc.label = RegionLabel::SphereTorus;
        f.minimal_s2 = f.nonminimal_s2 = f.finite_t2 = true;
    } else {
        rc.label = RegionLabel::Torus;
        f.finite_t2 = f.infinite_t2 = true;
    }
    return rc;
}

std::vector<double> RGrid::values() const {
    if (steps < 1) throw DomainError("R grid needs at least one step");
    std::vector<double> v;
    if (steps == 1) return {lo};
    for (int i = 0; i < steps; ++i) v.push_back(lo + (hi - lo) * i / (steps - 1));
    return v;
}

std::vector<SweepRow> sweep_regions(int n, const RGrid& grid, int alpha_grid) {
    std::vector<SweepRow> rows;
    for (double R : grid.values()) {
        const SolutionRecord minimal = solve_minimal_s2(R, n);
        SweepRow row;
        row.R = R;
        row.n = n;
        row.family = Family::S2Min;
        row.exists = minimal.exists;
        row.reject_reason = minimal.reject_reason;
        if (minimal.exists) {
            row.alpha = minimal.alpha;
            row.beta_lo = row.beta_hi = minimal.beta_prime;
        }
        rows.push_back(row);

        std::vector<SolutionRecord> nonmin = enumerate_s2_nonminimal(R, n, alpha_grid);
        std::sort(nonmin.begin(), nonmin.end(), [](const SolutionRecord& a, const SolutionRecord& b) {
            return std::make_tuple(a.k.value_or(0), a.alpha, a.beta_prime) <
                   std::make_tuple(b.k.value_or(0), b.alpha, b.beta_prime);
        });
        for (const SolutionRecord& rec : nonmin) {
            SweepRow r;
            r.R = R;
            r.n = n;
            r.family = Family::S2NonMin;
            r.k = rec.k;
            r.alpha = rec.alpha;
            r.beta_lo = r.beta_hi = rec.beta_prime;
            r.exists = rec.exists;
            r.reject_reason = rec.reject_reason;
            rows.push_back(std::move(r));
        }

        for (int k = 1; 2 * k < n; ++k) {
            if (std::gcd(n, k) != 1) continue;
            const BetaWindow w = t2_beta_window(R, n, k);
            SweepRow r;
            r.R = R;
            r.n = n;
            r.family = Family::T2Finite;
            r.k = k;
            r.alpha = 2 * kPi * k / n;
            r.exists = w.kind != WindowKind::None;
            if (r.exists) {
                r.beta_lo = w.lower;
                r.beta_hi = w.upper;
            } else {
                r.reject_reason = "R <= threshold " + fmt(w.threshold);
            }
            rows.push_back(std::move(r));
        }
    }
    return rows;
}

} // namespace ncsurf
