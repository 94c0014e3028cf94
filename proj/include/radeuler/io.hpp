#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "radeuler/geometry.hpp"

namespace radeuler {

struct Snapshot;
struct RunResult;

/// Radial profiles obtained by pairing each mass node x_i with its radius r_i.
struct EulerianProfile {
    std::vector<double> r, rho, u, theta, P, s, q;
    double mass = 0.0;        ///< int_a^b r^2 rho dr, trapezoid in the volume variable r^3/3
    double mass_error = 0.0;  ///< |mass - M| / M
};

EulerianProfile reconstruct_eulerian(const Snapshot& snap, const MassGrid& grid);

/// Fixed CSV column orders.
inline constexpr const char* kTrajectoryHeader = "t,x,P,u,s,q,r,rho,theta";
inline constexpr const char* kDiagnosticsHeader =
    "t,E0,D0,cumulative_D0,norm_m1,norm_m2,norm_m1_tan,norm_m2_tan,dissipation,"
    "cumulative_dissipation,sup_norm_m2_sq,apriori_lhs,C0";
inline constexpr const char* kIterationsHeader = "k,delta,gamma";
inline constexpr const char* kEulerianHeader = "r,rho,u,theta,P,s,q";

/// Writes trajectory.csv, diagnostics.csv, eulerian.csv (last snapshot),
/// summary.txt, plot.gp and, in picard mode, iterations.csv.
/// Creates the directory; throws IoError with the path on failure.
void write_outputs(const RunResult& result, const std::filesystem::path& dir);

/// Output directory for a run: the configured directory if set, otherwise
/// <root>/<mode> where root is $RADEULER_OUTPUT_ROOT or "runs".
std::filesystem::path output_directory(const std::string& configured, const std::string& mode);
std::filesystem::path default_output_root();

/// Samples read from text: either one value per line, or two columns
/// (radius, value) separated by a comma or whitespace.
struct SampleTable {
    std::vector<double> radii;  ///< empty for single-column files
    std::vector<double> values;
};

/// Blank lines and '#' comments are skipped, as is a first line that does
/// not parse (a header). Throws IoError / InputError with path and line.
SampleTable load_samples(const std::filesystem::path& path);

/// Values on `count` uniformly spaced radii of [a, b]. Single-column tables
/// must already have `count` entries; two-column tables must span [a, b] and
/// are linearly resampled.
std::vector<double> samples_on_grid(const SampleTable& table, const AnnulusGeometry& geom,
                                    std::size_t count);

}  // namespace radeuler
