#include "ncsurf/geometry.hpp"

#include "ncsurf/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace ncsurf {

namespace {

constexpr double kPi = std::numbers::pi;

void check_chart(double p, double R) {
    const double rho2 = R + std::cos(2 * p);
    if (!(rho2 > 0)) {
        std::ostringstream os;
        os << "chart invalid at p = " << p << " for R = " << R << " (R + cos 2p = " << rho2 << ")";
        throw ChartDomainError(os.str());
    }
}

} // namespace

std::string topology_name(TopologyLabel t) {
    switch (t) {
    case TopologyLabel::Null: return "Null";
    case TopologyLabel::Point: return "Point";
    case TopologyLabel::ConvexSphere: return "ConvexSphere";
    case TopologyLabel::Sphere: return "Sphere";
    case TopologyLabel::Variety: return "Variety";
    case TopologyLabel::Torus: return "Torus";
    }
    return "Null";
}

double variety_residual(const Point3& pt, double R) {
    const double w = pt.x * pt.x + pt.y * pt.y - R;
    return pt.z * pt.z + w * w - 1.0;
}

Point3 darboux_point(const DarbouxPoint& dp, double R) {
    check_chart(dp.p, R);
    const double rho = std::sqrt(R + std::cos(2 * dp.p));
    return {rho * std::cos(dp.q), -rho * std::sin(dp.q), std::sin(2 * dp.p)};
}

TopologyLabel topology_of(double R) {
    if (R < -1) return TopologyLabel::Null;
    if (R == -1) return TopologyLabel::Point;
    if (R <= 0) return TopologyLabel::ConvexSphere;
    if (R < 1) return TopologyLabel::Sphere;
    if (R == 1) return TopologyLabel::Variety;
    return TopologyLabel::Torus;
}

std::vector<std::pair<double, double>> slice_curve(double R, int samples) {
    if (R < -1) throw DomainError("slice is empty for R < -1");
    if (samples < 8) throw DomainError("need at least 8 samples");
    if (R == -1) return {{0.0, 0.0}};
    // x^2 - R = cos t, z = sin t
    std::vector<std::pair<double, double>> out;
    if (R < 1) {
        const double tmax = std::acos(-R);
        for (int sign : {1, -1}) {
            for (int j = 0; j < samples; ++j) {
                const double t = -tmax + 2 * tmax * j / (samples - 1);
                const bool edge = j == 0 || j == samples - 1;
                const double x = edge ? 0.0 : sign * std::sqrt(std::max(0.0, R + std::cos(t)));
                const double z = edge ? std::copysign(std::sqrt(1 - R * R), t) : std::sin(t);
                out.emplace_back(x, z);
            }
        }
    } else {
        for (int sign : {1, -1}) {
            for (int j = 0; j < samples; ++j) {
                const double t = -kPi + 2 * kPi * j / samples;
                out.emplace_back(sign * std::sqrt(std::max(0.0, R + std::cos(t))), std::sin(t));
            }
        }
    }
    return out;
}

std::complex<double> poisson_fd(const ChartFunction& f, const ChartFunction& g, const DarbouxPoint& dp, double R,
                                double h) {
    if (!(h > 0)) throw DomainError("step must be positive");
    for (double p : {dp.p - h, dp.p, dp.p + h}) check_chart(p, R);
    const double p = dp.p, q = dp.q;
    const auto fp = (f(p + h, q) - f(p - h, q)) / (2 * h);
    const auto fq = (f(p, q + h) - f(p, q - h)) / (2 * h);
    const auto gp = (g(p + h, q) - g(p - h, q)) / (2 * h);
    const auto gq = (g(p, q + h) - g(p, q - h)) / (2 * h);
    return fp * gq - fq * gp;
}

std::complex<double> poisson_fd(const CommutativePoly& f, const CommutativePoly& g, const DarbouxPoint& dp,
                                double R, double h) {
    for (const CommutativePoly* c : {&f, &g})
        if (std::abs(c->R().get_d() - R) > 1e-12 * std::max(1.0, std::abs(R)))
            throw ContextMismatch("polynomial R differs from the chart R");
    return poisson_fd([&](double p, double q) { return f.eval_chart(p, q); },
                      [&](double p, double q) { return g.eval_chart(p, q); }, dp, R, h);
}

DarbouxPoint sample_chart_point(std::mt19937_64& rng, double R, double min_rho2) {
    // R + cos 2p >= min_rho2  <=>  |2p| <= arccos(min_rho2 - R)
    const double c = min_rho2 - R;
    if (c > 1) throw ChartDomainError("no chart points with R + cos 2p >= " + std::to_string(min_rho2));
    const double pmax = c <= -1 ? kPi / 2 : std::acos(c) / 2;
    std::uniform_real_distribution<double> pd(-pmax, pmax), qd(-kPi, kPi);
    DarbouxPoint dp;
    dp.p = pd(rng);
    dp.q = qd(rng);
    return dp;
}

} // namespace ncsurf
