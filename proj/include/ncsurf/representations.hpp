#pragma once

// Finite matrix representations of A(R).
//
// Basis |m>, m = 0..n-1 (or m = -M..M for a window), with
//
//     U |m>  = e^{i (beta' + alpha/2 + m alpha)} |m>
//     Ap |m> = C_{m+1} |m+1>,   |C_m|^2 = sec(alpha/2) cos(beta' + m alpha) + R
//
// and Am = Ap^dagger. S2 ladders terminate at both ends; T2 ladders close
// into a cycle whose wrap entry carries the phase nu.

#include "ncsurf/ncalgebra.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ncsurf {

using Matrix = Eigen::MatrixXcd;

enum class Family { S2Min, S2NonMin, T2Finite, T2Window, FuzzySphere, NCTorusFinite };

/// "s2min", "s2nonmin", "t2finite", "t2window", "fuzzysphere", "nctorus"
std::string family_name(Family f);
Family parse_family(std::string_view name);

inline constexpr int kMaxDimension = 512;
/// |C|^2 values within this distance of zero count as zero (S2 endpoints, window splits).
inline constexpr double kEndpointTolerance = 1e-9;

struct ReprSpec {
    Family family = Family::S2Min;
    double R = 0.0;
    int n = 2;
    double alpha = 0.0;
    double beta_prime = 0.0;
    std::optional<int> k;
    std::optional<std::complex<double>> nu;
    std::optional<int> M;
};

struct ReprMatrices {
    ReprSpec spec;
    double eps = 0.0;
    Matrix U;
    Matrix Ap;
    Matrix Am;
    /// Only set for the fuzzy sphere, whose z is not a function of a unitary.
    Matrix Z;
    /// Basis indices where a truncated window does not satisfy the relations.
    std::vector<int> boundary;

    int dim() const { return static_cast<int>(Ap.rows()); }
};

struct ResidualReport {
    std::vector<std::pair<std::string, double>> entries;

    double max() const;
    /// Throws std::out_of_range for an unknown name.
    double at(std::string_view name) const;
};

double c_squared(double theta_prime, double R, double alpha);
double epsilon_of_alpha(double alpha);

ReprMatrices build_s2(const ReprSpec& spec);
ReprMatrices build_t2_finite(const ReprSpec& spec);
ReprMatrices build_t2_window(const ReprSpec& spec);
/// Dispatch on spec.family.
ReprMatrices build(const ReprSpec& spec);

ReprMatrices build_fuzzy_sphere(int n);

struct TorusPair {
    Matrix U;
    Matrix V;
    std::complex<double> q;
};

TorusPair build_nc_torus(int n, int k, double beta, std::complex<double> nu = 1.0);
/// UV - qVU, unitarity of U and V.
ResidualReport verify_torus(const TorusPair& t);

/// Frobenius residuals of the defining relations (or of the sphere relations for the fuzzy sphere).
ResidualReport verify_relations(const ReprMatrices& m);

/// Psi(f) = sum over terms of L_r U^s xi(eps).
Matrix rep_evaluate(const NormalForm& f, const ReprMatrices& m);

/// Distinct U eigenvalues and a connected ladder graph.
bool check_irreducible(const ReprMatrices& m);

/// Phase of the product of the Am ladder entries around the cycle (the nu of a T2 representation).
std::complex<double> ladder_cycle_phase(const ReprMatrices& m);

/// Rephase basis vectors |m> -> e^{i phases[m]} |m>.
ReprMatrices gauge_transform(const ReprMatrices& m, const std::vector<double>& phases);

/// X = (Ap + Am)/2, Y = (Ap - Am)/(2i), W = (U + U^dagger)/2, Z = (U - U^dagger)/(2i) (or the stored Z).
struct Coordinates {
    Matrix X, Y, Z, W;
};
Coordinates coordinates(const ReprMatrices& m);

} // namespace ncsurf
