#pragma once

// File formats: representation JSON, sweep CSV, circle-diagram SVG.

#include "ncsurf/classifier.hpp"
#include "ncsurf/representations.hpp"

#include <string>
#include <vector>

namespace ncsurf {

/// printf "%.17g": round-trips every double.
std::string format_number(double v);

/// {family, R, n, alpha, beta_prime, beta, k, M, nu, eps, matrices: {u, ap, am[, z]}, residuals}
std::string rep_to_json(const ReprMatrices& m);
ReprMatrices rep_from_json(const std::string& text);
void emit_rep_json(const ReprMatrices& m, const std::string& path);
ReprMatrices load_rep_json(const std::string& path);

inline constexpr const char* kSweepHeader = "R,n,family,k,alpha,beta_lo,beta_hi,exists,reject_reason";

std::string sweep_to_csv(const std::vector<SweepRow>& rows);
void emit_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

/// Unit circle of radius 200 in a 440x440 view box; forbidden wedge, ladder polygon, eigenvalue dots.
std::string diagram_svg(const ReprSpec& spec);
void emit_diagram_svg(const ReprSpec& spec, const std::string& path);

/// Write text to path, throwing std::runtime_error on I/O failure.
void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

} // namespace ncsurf
