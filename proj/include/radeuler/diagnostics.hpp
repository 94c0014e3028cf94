#pragma once

#include <span>
#include <vector>

#include "radeuler/eos.hpp"
#include "radeuler/evolution.hpp"
#include "radeuler/geometry.hpp"

namespace radeuler {

/// Sum over k <= m of || d^k f / dt^k ||_{H^{m-k}}, where time_derivs[k] is
/// the k-th time derivative field. H^j uses the discrete x-derivatives of
/// stencil.hpp and trapezoid quadrature.
double discrete_norm(std::span<const Field> time_derivs, int m, double dx);

/// Same sum with plain L2 norms (x-derivatives left out).
double tangential_norm(std::span<const Field> time_derivs, int m, double dx);

/// Discrete H^j norm, j in {0, 1, 2}.
double sobolev_norm(std::span<const double> f, int j, double dx);

/// Per-component values for the tuple (P - 1, u, s - 1, q, q_x).
struct ComponentNorms {
    double P = 0.0;
    double u = 0.0;
    double s = 0.0;
    double q = 0.0;
    double qx = 0.0;

    double sum() const { return P + u + s + q + qx; }
};

struct StateNorms {
    ComponentNorms l2;      ///< L2 norms
    ComponentNorms l2_x;    ///< L2 norms of the x-derivatives
    ComponentNorms l2_t;    ///< L2 norms of the t-derivatives
    ComponentNorms m1;      ///< |||.|||_1
    ComponentNorms m2;      ///< |||.|||_2
    ComponentNorms m1_tan;  ///< |||.|||_{1,tan}
    ComponentNorms m2_tan;  ///< |||.|||_{2,tan}

    /// |||(P - 1, u, s - 1)|||_2, the reference scale of the a priori bound.
    double data_m2 = 0.0;
    /// |||(P_t, P_x, s_t, s_x)|||_1^2 + |||(u, q, q_x)|||_2^2
    double dissipation = 0.0;
};

/// Norms of the perturbation at `state`, with time derivatives obtained by
/// substituting the equations (semi_discrete_derivatives), never by
/// differencing stored time slices.
StateNorms state_norms(const SimState& state, const MassGrid& grid, const GasParams& gas,
                       double radiation_coupling = 1.0);

struct EnergyPair {
    double E0 = 0.0;  ///< weighted L2 energy of the perturbation
    double D0 = 0.0;  ///< radiative dissipation
};

/// E0 = int cv/((cv+1) c_rho) (P-1)^2 + u^2 + c_theta/((cv+1) c_rho) (s-1)^2 dx
/// D0 = int q^2/(4 c_theta^3) + c_rho^2/(4 c_theta^3) ((r^2 q)_x)^2 dx
EnergyPair energy_m0(const SimState& state, const MassGrid& grid, const GasParams& gas);

struct PerturbationResiduals {
    double S1 = 0.0;
    double S3 = 0.0;
    double S4 = 0.0;
};

/// Pointwise source fields of the linearized perturbation system around
/// (c_rho, c_theta); see perturbation_residuals.
struct PerturbationSources {
    Field S1;
    Field S3;
    Field S4;
};

PerturbationSources perturbation_sources(const SimState& state, const MassGrid& grid,
                                         const GasParams& gas, double radiation_coupling = 1.0);

/// L2 norms of the three nonlinear remainders. Each is formally quadratic in
/// the perturbation.
PerturbationResiduals perturbation_residuals(const SimState& state, const MassGrid& grid,
                                             const GasParams& gas,
                                             double radiation_coupling = 1.0);

struct DiagnosticRecord {
    double t = 0.0;
    double E0 = 0.0;
    double D0 = 0.0;
    double cumulative_D0 = 0.0;
    StateNorms norms;
    double cumulative_dissipation = 0.0;
    double sup_m2_sq = 0.0;      ///< sup_{t' <= t} |||(P-1, u, s-1, q, q_x)|||_2^2
    double apriori_lhs = 0.0;    ///< sup_m2_sq + cumulative_dissipation
    double C0 = 1.0;             ///< smallest constant validating the bound up to t
};

/// Streams states in time order and maintains the cumulative integrals
/// (trapezoid in time) and the running constant.
class DiagnosticsAccumulator {
public:
    DiagnosticsAccumulator(MassGrid grid, GasParams gas, double radiation_coupling = 1.0);

    const DiagnosticRecord& add(const SimState& state);
    const std::vector<DiagnosticRecord>& records() const { return records_; }
    double reference() const { return reference_; }

private:
    MassGrid grid_;
    GasParams gas_;
    double coupling_;
    double reference_ = 0.0;
    std::vector<DiagnosticRecord> records_;
};

struct AprioriResult {
    bool pass = true;
    double C0 = 1.0;
    double ceiling = 0.0;
    double reference = 0.0;
    std::vector<double> margin;  ///< ceiling * reference - lhs(t)
};

/// Smallest C0 with lhs(t) <= C0 * |||(P-1, u, s-1)(0)|||_2^2 at every
/// recorded time (1 when the reference vanishes) and a pass flag against
/// `ceiling`.
AprioriResult apriori_monitor(std::span<const DiagnosticRecord> records, double ceiling);

struct NormReport {
    std::vector<DiagnosticRecord> records;
    AprioriResult apriori;
};

}  // namespace radeuler
