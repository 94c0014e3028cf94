#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "radeuler/eos.hpp"
#include "radeuler/geometry.hpp"

namespace radeuler {

using Field = std::vector<double>;

/// Strong-stability-preserving Runge-Kutta schemes (Shu-Osher form).
/// SSP-RK2 amplifies purely oscillatory modes slightly every step; SSP-RK3
/// damps them and is the default for long integrations.
enum class Integrator { SspRk2, SspRk3 };

Integrator parse_integrator(const std::string& name);
std::string to_string(Integrator integrator);

struct SolverOptions {
    Integrator integrator = Integrator::SspRk3;
    /// Artificial dissipation nu * dx^2 * f_xx added to P, u, s. Off by default.
    double nu = 0.0;
    /// Scales the radiative source; 0 gives the radiation-off (pure acoustic) system.
    double radiation_coupling = 1.0;
};

/// Nodal fields at one time instant. P, u, s, r are prognostic; rho, theta,
/// q and w = r^2 q are caches recomputed by LagrangianSolver::refresh and
/// tagged with the step that produced them.
struct SimState {
    double t = 0.0;
    std::size_t step = 0;

    Field P;
    Field u;
    Field s;
    Field r;

    Field rho;
    Field theta;
    Field q;
    Field w;
    std::size_t cache_step = static_cast<std::size_t>(-1);

    bool caches_current() const { return cache_step == step; }
};

struct Tendencies {
    Field P;
    Field u;
    Field s;
    Field r;
};

/// Method-of-lines integrator for the Lagrangian radiative Euler system
///
///   P_t = -(cv+1)/cv P rho (r^2 u)_x - rho (r^2 q)_x / cv
///   u_t = -r^2 P_x
///   s_t = -(r^2 q)_x / theta
///   r_t = u
///
/// with u = q = 0 at both ends and q re-solved from the elliptic equation at
/// every stage.
class LagrangianSolver {
public:
    LagrangianSolver(MassGrid grid, GasParams gas, SolverOptions options = {});

    const MassGrid& grid() const { return grid_; }
    const GasParams& gas() const { return gas_; }
    const SolverOptions& options() const { return options_; }

    /// Validates the invariants and fills the caches.
    SimState make_state(Field P, Field u, Field s, Field r, double t = 0.0) const;

    /// Recomputes rho, theta, q, w from the prognostic fields. Throws
    /// StateInvalidError on positivity loss or mesh tangling.
    void refresh(SimState& state) const;

    /// Tendencies at `state`; q is solved afresh from the prognostic fields.
    Tendencies rhs(const SimState& state) const;

    /// cfl * dx / max_i r_i^2 sqrt((cv+1)/cv P_i rho_i).
    double stable_dt(const SimState& state, double cfl) const;

    /// Largest characteristic speed in mass coordinates.
    double max_wave_speed(const SimState& state) const;

    /// One step of the configured SSP scheme; u is re-zeroed at the ends after
    /// every stage. Precondition (unchecked): dt <= stable_dt(state, 1).
    SimState step(const SimState& state, double dt) const;

private:
    struct Stage {
        Field rho;
        Field theta;
        Field q;
        Field w;
    };

    Stage evaluate(std::span<const double> P, std::span<const double> s,
                   std::span<const double> r, double t) const;
    Tendencies tendencies(std::span<const double> P, std::span<const double> u,
                          std::span<const double> r, const Stage& stage) const;

    MassGrid grid_;
    GasParams gas_;
    SolverOptions options_;
};

}  // namespace radeuler
