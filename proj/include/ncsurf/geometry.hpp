#pragma once

// The commutative surface M(R): z^2 + (x^2 + y^2 - R)^2 = 1, with the chart
//
//     x = rho cos q,  y = -rho sin q,  z = sin 2p,  rho = (R + cos 2p)^{1/2}
//
// in which {p, q} = 1.

#include "ncsurf/ncalgebra.hpp"

#include <complex>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace ncsurf {

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct DarbouxPoint {
    double p = 0.0;
    double q = 0.0;
};

enum class TopologyLabel { Null, Point, ConvexSphere, Sphere, Variety, Torus };

std::string topology_name(TopologyLabel t);

double variety_residual(const Point3& pt, double R);

/// Throws ChartDomainError if R + cos 2p <= 0.
Point3 darboux_point(const DarbouxPoint& dp, double R);

TopologyLabel topology_of(double R);

/// The y = 0 slice z^2 + (x^2 - R)^2 = 1 as (x, z) pairs: samples points per
/// branch, the x >= 0 branch first. R = -1 gives the single point (0, 0).
std::vector<std::pair<double, double>> slice_curve(double R, int samples);

inline constexpr double kDefaultStep = 1e-5;

using ChartFunction = std::function<std::complex<double>(double p, double q)>;

/// Central-difference df/dp dg/dq - df/dq dg/dp at dp.
std::complex<double> poisson_fd(const ChartFunction& f, const ChartFunction& g, const DarbouxPoint& dp, double R,
                                double h = kDefaultStep);
std::complex<double> poisson_fd(const CommutativePoly& f, const CommutativePoly& g, const DarbouxPoint& dp,
                                double R, double h = kDefaultStep);

/// Uniform chart point with R + cos 2p >= min_rho2 (keeps finite differences away from the chart edge).
DarbouxPoint sample_chart_point(std::mt19937_64& rng, double R, double min_rho2 = 0.05);

} // namespace ncsurf
