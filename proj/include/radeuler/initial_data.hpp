#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "radeuler/eos.hpp"
#include "radeuler/evolution.hpp"
#include "radeuler/geometry.hpp"

namespace radeuler {

enum class ProfileKind { SineBump, CompactBump, Custom };

ProfileKind parse_profile(const std::string& name);
std::string to_string(ProfileKind kind);

/// Perturbation of the reference state (P, u, s) = (1, 0, 1).
///
/// Profiles are functions of the normalized radius xi = (r - a)/(b - a):
///  - sine-bump:    sin(pi xi)^p with p = flatness_order; the first p - 1
///                  derivatives vanish at both ends.
///  - compact-bump: exp(k (1 - 1/(1 - z^2))), z = (xi - center)/width,
///                  k = sharpness, zero outside |z| < 1 (flat to all orders at
///                  both ends). k = 1 is the classical bump; its edge layers
///                  need fine grids before second-order convergence shows.
///  - custom:       perturbation samples on num_nodes uniformly spaced
///                  radii, linearly interpolated.
struct InitialDataSpec {
    double epsilon = 1e-3;
    ProfileKind profile = ProfileKind::CompactBump;
    int flatness_order = 1;

    double weight_P = 1.0;
    double weight_u = 0.0;
    double weight_s = 1.0;

    double center = 0.5;
    double width = 0.45;
    double sharpness = 4.0;

    std::vector<double> custom_P;
    std::vector<double> custom_u;
    std::vector<double> custom_s;

    void validate() const;
};

/// Initial fields on the mass grid built from the Eulerian profiles through
/// r0 = h^{-1}.
struct InitialData {
    MassGrid grid;
    Field P;
    Field u;
    Field s;
    Field r;
    /// Discrete H^2 norm of (P - 1, u, s - 1).
    double perturbation_h2 = 0.0;
};

/// Number of uniform radius samples used to tabulate h(z).
inline constexpr std::size_t kMassTableSamples = 32769;

InitialData build_initial_data(const InitialDataSpec& spec, const AnnulusGeometry& geom,
                               std::size_t n_cells, const GasParams& gas);

/// Profile value at normalized radius xi in [0, 1] for the analytic families.
double profile_value(const InitialDataSpec& spec, double xi);

/// Time derivatives d^j/dt^j of the semi-discrete fields at one instant,
/// obtained by repeatedly substituting the equations: differentiate the
/// system in time, solve the time-differentiated elliptic problem for the
/// flux derivative, then read off the next derivative of (P, u, s, r).
///
/// P[j], u[j], s[j], r[j] for j = 0..order; q[j], w[j] for j = 0..order
/// (one flux order beyond what the inductive step strictly needs, which the
/// norm diagnostics use). u[j] (j >= 1) is zero at both ends, matching the
/// boundary treatment of the integrator.
struct TimeDerivatives {
    int order = 0;
    std::vector<Field> P, u, s, r, q, w, rho, theta;
};

TimeDerivatives semi_discrete_derivatives(const Field& P, const Field& u, const Field& s,
                                          const Field& r, const MassGrid& grid,
                                          const GasParams& gas, int order,
                                          double radiation_coupling = 1.0);

/// Inductively defined time-derivative data at t = 0 for k in {1, 2}.
/// Throws UnsupportedOrderError for other k.
TimeDerivatives time_derivatives_at_zero(const InitialData& data, int k, const GasParams& gas,
                                         double radiation_coupling = 1.0);

struct CompatibilityReport {
    /// boundary[k] = {|d^k u/dt^k| at x = 0, at x = M}
    std::vector<std::array<double, 2>> boundary;
    double threshold = 0.0;
    int first_failure = -1;  ///< lowest failing order, -1 when all pass
    bool pass = true;
};

/// Boundary values of d^k u/dt^k at t = 0 for k <= order (order <= 2),
/// evaluated from the substituted expressions
///   k = 1: -r^2 P_x
///   k = 2: -2 r u P_x - r^2 (P_t)_x,
/// where (P_t)_x at the boundary uses the elliptic equation in place of
/// (rho (r^2 q)_x)_x. Passes when every value is <= 1e-10 * epsilon.
CompatibilityReport check_compatibility(const InitialData& data, double epsilon, int order,
                                        const GasParams& gas, double radiation_coupling = 1.0);

}  // namespace radeuler
