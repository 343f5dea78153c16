#pragma once

// Which (R, n, alpha, beta', k) admit a representation.
//
// S2 ladders need |C|^2 = 0 at both ends:
//     cos(beta') = cos(beta' + n alpha) = -R cos(alpha/2)
// and |C|^2 > 0 in between. Either beta' = pi k - n alpha/2 (minimal
// solutions and non-minimal branch A) or n alpha = 2 pi k' (branch B).

#include "ncsurf/representations.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ncsurf {

struct SolutionRecord {
    Family family = Family::S2Min;
    double R = 0.0;
    int n = 0;
    double alpha = 0.0;
    double beta_prime = 0.0;
    std::optional<int> k;
    /// "A" or "B" for non-minimal S2 solutions, empty otherwise.
    std::string branch;
    bool exists = false;
    std::string reject_reason;
    /// First m at which cos(beta' + m alpha) + R cos(alpha/2) > 0 fails.
    std::optional<int> failing_index;

    ReprSpec to_spec() const;
};

enum class WindowKind { None, Restricted, Full };

struct BetaWindow {
    WindowKind kind = WindowKind::None;
    double lower = 0.0;
    double upper = 0.0;
    double delta = 0.0;
    /// cos(pi/n) sec(pi k/n); exactly 1 for k = 1.
    double threshold = 0.0;
};

std::string window_kind_name(WindowKind k);

enum class RegionLabel { Null, Point, Sphere, Variety, SphereTorus, SphereTorusBoundary, Torus };

std::string region_name(RegionLabel r);

struct RegionFlags {
    bool minimal_s2 = false;
    bool nonminimal_s2 = false;
    bool finite_t2 = false;
    bool semi_infinite_t2 = false;
    bool infinite_t2 = false;
};

struct RegionClass {
    RegionLabel label;
    RegionFlags flags;
    double R_eps;
};

/// -cos(n alpha / 2) / cos(alpha / 2); strictly increasing on (0, 2 pi / n).
double r_hat(double alpha, int n);

SolutionRecord solve_minimal_s2(double R, int n);

inline constexpr int kDefaultGrid = 4096;

std::vector<SolutionRecord> enumerate_s2_nonminimal(double R, int n, int grid = kDefaultGrid);

/// Throws DomainError unless gcd(n, k) = 1 and 1 <= k < n/2.
BetaWindow t2_beta_window(double R, int n, int k);

/// cos(beta' + m alpha) + R cos(alpha/2) > 0 for m = 0..n-1 with alpha = 2 pi k / n.
bool t2_inequality_holds(double R, int n, int k, double beta_prime);

/// Relative tolerance for landing on R = -1, 1 or R_eps.
inline constexpr double kRegionTolerance = 1e-6;

RegionClass classify_region(double R, double eps);

struct RGrid {
    double lo = 0.0;
    double hi = 0.0;
    int steps = 1;

    std::vector<double> values() const;
};

struct SweepRow {
    double R = 0.0;
    int n = 0;
    Family family = Family::S2Min;
    std::optional<int> k;
    std::optional<double> alpha;
    std::optional<double> beta_lo;
    std::optional<double> beta_hi;
    bool exists = false;
    std::string reject_reason;
};

/// Rows in ascending (R, family, k, alpha) order.
std::vector<SweepRow> sweep_regions(int n, const RGrid& grid, int alpha_grid = kDefaultGrid);

} // namespace ncsurf
