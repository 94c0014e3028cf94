#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "radeuler/eos.hpp"
#include "radeuler/evolution.hpp"
#include "radeuler/geometry.hpp"

namespace radeuler {

/// Space-time fields on uniform time slices t_k = k * dt, k = 0..N, stored
/// as perturbations of the reference state: P - 1, u, s - 1, and q.
struct SpaceTimeFields {
    std::vector<double> times;
    std::vector<Field> P;
    std::vector<Field> u;
    std::vector<Field> s;
    std::vector<Field> q;

    std::size_t num_slices() const { return times.size(); }
};

/// Coefficient fields of the linearized system, derived from a previous
/// iterate: absolute P, s, thermodynamics from the EOS, and
///   r(t, x) = r0(x) + int_0^t u dtau   (trapezoid in time).
struct FrozenFields {
    std::vector<double> times;
    std::vector<Field> P;  ///< absolute pressure
    std::vector<Field> u;
    std::vector<Field> s;  ///< absolute entropy
    std::vector<Field> rho;
    std::vector<Field> theta;
    std::vector<Field> r;
};

/// Builds the frozen coefficients. Throws DomainError when positivity or
/// monotonicity of r fails on any slice, or when u does not vanish at the ends.
FrozenFields freeze(const SpaceTimeFields& iterate, const Field& r0, const MassGrid& grid,
                    const GasParams& gas);

/// Initial perturbation (P0 - 1, u0, s0 - 1) and the initial radius field.
struct LinearizedInit {
    Field P;
    Field u;
    Field s;
    Field r0;
};

/// One pass of the linearized system at frozen coefficients:
///  1. q on every slice from the elliptic equation at the frozen state;
///  2. s by trapezoid time integration of s_t = -(r^2 q)_x / theta;
///  3. (P, u) by SSP-RK2 on
///       P_t = -(cv+1)/cv P rho (r^2 u)_x - rho (r^2 q)_x / cv
///       u_t = -r^2 P_x
///     with the coefficients (P, rho, r of the frozen fields) and q taken on the
///     two slices bounding each step; u = 0 at both ends.
/// The result is linear in the initial data and the frozen flux.
SpaceTimeFields solve_linearized(const FrozenFields& frozen, const LinearizedInit& init,
                                 const MassGrid& grid, const GasParams& gas,
                                 double radiation_coupling = 1.0);

/// The initial data held constant on every slice.
SpaceTimeFields constant_iterate(const LinearizedInit& init, const std::vector<double>& times);

/// sup over slices of the combined discrete L2 norm of (P, u, s) differences.
double sup_l2_distance(const SpaceTimeFields& a, const SpaceTimeFields& b, double dx);

struct PicardProblem {
    MassGrid grid;
    GasParams gas;
    LinearizedInit init;
    double T = 0.05;
    double dt = 0.0;  ///< slice spacing; the integrator step
    double radiation_coupling = 1.0;
};

/// Uniform slice times 0, dt, ..., T with dt <= max_dt and T an exact multiple.
std::vector<double> slice_times(double T, double max_dt);

struct PicardResult {
    std::vector<SpaceTimeFields> iterates;
    std::vector<double> deltas;       ///< deltas[k] = ||iterate_{k+1} - iterate_k||
    std::vector<double> ratios;       ///< deltas[k+1] / deltas[k] where defined
    std::vector<std::size_t> ratio_index;  ///< k of each emitted ratio
    std::vector<double> wall_seconds;  ///< per produced iterate
    bool converged = false;
    bool failed = false;
    std::string failure;
};

/// iterate_0 = initial data constant in time; iterate_{k+1} = solve_linearized(freeze(iterate_k)).
/// Stops after k_max new iterates or once a delta drops below tol. Ratios are
/// omitted when the denominator is below 1e-14.
PicardResult picard_iterate(const PicardProblem& problem, int k_max, double tol);

}  // namespace radeuler
