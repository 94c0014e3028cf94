#pragma once

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "radeuler/evolution.hpp"
#include "radeuler/geometry.hpp"
#include "radeuler/initial_data.hpp"

namespace support {

inline constexpr double pi = std::numbers::pi;

inline double rel_diff(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

inline radeuler::InitialData compact(double eps, std::size_t n, const radeuler::GasParams& gas = {}) {
    radeuler::InitialDataSpec spec;
    spec.epsilon = eps;
    return radeuler::build_initial_data(spec, radeuler::AnnulusGeometry{}, n, gas);
}

inline radeuler::InitialData sine(double eps, std::size_t n, int power = 1,
                                  const radeuler::GasParams& gas = {}) {
    radeuler::InitialDataSpec spec;
    spec.epsilon = eps;
    spec.profile = radeuler::ProfileKind::SineBump;
    spec.flatness_order = power;
    return radeuler::build_initial_data(spec, radeuler::AnnulusGeometry{}, n, gas);
}

inline radeuler::SimState state_of(const radeuler::LagrangianSolver& solver,
                                   const radeuler::InitialData& d) {
    return solver.make_state(d.P, d.u, d.s, d.r);
}

inline radeuler::SimState advance(const radeuler::LagrangianSolver& solver, radeuler::SimState s,
                                  double t_end, double cfl = 0.4) {
    while (s.t < t_end) {
        const double dt = std::min(solver.stable_dt(s, cfl), t_end - s.t);
        s = solver.step(s, dt);
    }
    return s;
}

// Smooth random field vanishing at both ends: a few sine modes with random amplitudes.
inline std::vector<double> random_smooth(std::size_t nodes, std::mt19937& rng, int modes = 4) {
    std::uniform_real_distribution<double> amp(-1.0, 1.0);
    std::vector<double> coeff(modes);
    for (auto& c : coeff) {
        c = amp(rng);
    }
    std::vector<double> f(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        const double xi = static_cast<double>(i) / static_cast<double>(nodes - 1);
        double v = 0.0;
        for (int k = 0; k < modes; ++k) {
            v += coeff[k] * std::sin(pi * (k + 1) * xi) / (k + 1);
        }
        f[i] = v;
    }
    return f;
}

}  // namespace support
