#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "radeuler/eos.hpp"
#include "radeuler/errors.hpp"
#include "radeuler/evolution.hpp"
#include "radeuler/geometry.hpp"
#include "radeuler/initial_data.hpp"
#include "radeuler/stencil.hpp"
#include "support.hpp"

using namespace radeuler;

namespace {

double max_abs_all(const Tendencies& t) {
    return std::max({stencil::max_abs(t.P), stencil::max_abs(t.u), stencil::max_abs(t.s),
                     stencil::max_abs(t.r)});
}

double max_diff(const Field& a, const Field& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

double state_diff(const SimState& a, const SimState& b) {
    return std::max({max_diff(a.P, b.P), max_diff(a.u, b.u), max_diff(a.s, b.s), max_diff(a.r, b.r)});
}

// Largest |eigenvalue| of the frozen-coefficient acoustic operator
//   P_t = -k P rho D(r^2 u),  u_t = -r^2 D(P),
// with u pinned to zero at both ends and D the same one-sided/central derivative matrix.
double acoustic_spectral_radius(const SimState& s, const GasParams& gas, double dx) {
    const auto n = static_cast<Eigen::Index>(s.P.size());
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(n, n);
    D(0, 0) = -3.0;
    D(0, 1) = 4.0;
    D(0, 2) = -1.0;
    D(n - 1, n - 1) = 3.0;
    D(n - 1, n - 2) = -4.0;
    D(n - 1, n - 3) = 1.0;
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        D(i, i - 1) = -1.0;
        D(i, i + 1) = 1.0;
    }
    D /= 2.0 * dx;
    const Eigen::Index m = n - 2;  // interior velocities
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + m, n + m);
    const double kp = gas.pressure_factor();
    for (Eigen::Index i = 0; i < n; ++i) {
        const double c = -kp * s.P[i] * s.rho[i];
        for (Eigen::Index j = 1; j + 1 < n; ++j) {
            A(i, n + j - 1) = c * D(i, j) * s.r[j] * s.r[j];
        }
    }
    for (Eigen::Index j = 1; j + 1 < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            A(n + j - 1, i) = -s.r[j] * s.r[j] * D(j, i);
        }
    }
    const Eigen::VectorXcd ev = A.eigenvalues();
    return ev.cwiseAbs().maxCoeff();
}

InitialDataSpec pressure_sine(double eps) {
    InitialDataSpec spec;
    spec.epsilon = eps;
    spec.profile = ProfileKind::SineBump;
    spec.weight_s = 0.0;
    return spec;
}

}  // namespace

TEST_CASE("equilibrium tendencies vanish") {
    const auto d = support::compact(0.0, 64);
    const LagrangianSolver solver(d.grid, GasParams{});
    const auto state = support::state_of(solver, d);
    CHECK(max_abs_all(solver.rhs(state)) <= 1e-13);
    CHECK(stencil::max_abs(state.q) <= 1e-13);
}

TEST_CASE("entropy-only perturbation: u_t vanishes, s_t does not") {
    InitialDataSpec spec;
    spec.epsilon = 1e-3;
    spec.profile = ProfileKind::SineBump;
    spec.weight_P = 0.0;
    spec.weight_s = 1.0;
    const auto d = build_initial_data(spec, AnnulusGeometry{}, 64, GasParams{});
    const LagrangianSolver solver(d.grid, GasParams{});
    const auto state = support::state_of(solver, d);
    CHECK(stencil::max_abs(state.u) == 0.0);
    const auto t = solver.rhs(state);
    CHECK(stencil::max_abs(t.u) <= 1e-13);
    CHECK(stencil::max_abs(t.s) > 1e-6);
}

TEST_CASE("tendencies scale linearly near equilibrium") {
    double prev = 0.0;
    for (double eps : {1e-3, 5e-4}) {
        const auto d = build_initial_data(pressure_sine(eps), AnnulusGeometry{}, 128, GasParams{});
        const LagrangianSolver solver(d.grid, GasParams{});
        const double norm = max_abs_all(solver.rhs(support::state_of(solver, d)));
        if (prev > 0.0) {
            CHECK(prev / norm == doctest::Approx(2.0).epsilon(0.05));
        }
        prev = norm;
    }
}

TEST_CASE("stable_dt at equilibrium") {
    const GasParams gas;
    const auto d = support::compact(0.0, 64);
    const LagrangianSolver solver(d.grid, gas);
    const auto state = support::state_of(solver, d);
    const double lam = 4.0 * std::sqrt(gas.pressure_factor() * std::exp(-0.4));
    CHECK(lam == doctest::Approx(4.2279).epsilon(1e-4));
    CHECK(solver.max_wave_speed(state) == doctest::Approx(lam).epsilon(1e-12));
    CHECK(solver.stable_dt(state, 0.4) == doctest::Approx(0.4 * d.grid.dx() / lam).epsilon(1e-12));

    CHECK_THROWS_AS(solver.stable_dt(state, 0.0), DomainError);
    CHECK_THROWS_AS(solver.stable_dt(state, 1.5), DomainError);
}

TEST_CASE("dense spectral radius exceeds the wave-speed bound only by the boundary-closure factor") {
    // The one-sided closure carries purely imaginary modes at 2/sqrt(3) times the interior maximum.
    const GasParams gas;
    const double lam = 4.0 * std::sqrt(gas.pressure_factor() * std::exp(-0.4));
    for (std::size_t n : {32, 64}) {
        const auto d = support::compact(0.0, n);
        const LagrangianSolver solver(d.grid, gas);
        const auto state = support::state_of(solver, d);
        const double ratio = acoustic_spectral_radius(state, gas, d.grid.dx()) * d.grid.dx() / lam;
        MESSAGE("n=", n, " dense spectral radius / analytic bound = ", ratio);
        CHECK(ratio >= 0.98);
        CHECK(ratio <= 2.0 / std::sqrt(3.0) * 1.02);
    }

}

TEST_CASE("stable_dt when the pressure doubles") {
    const GasParams gas;
    const auto d = support::compact(0.0, 64);
    const LagrangianSolver solver(d.grid, gas);
    const auto base = support::state_of(solver, d);
    Field P2(d.P.size(), 2.0);
    const auto doubled = solver.make_state(P2, d.u, d.s, d.r);
    const double rho_ratio = doubled.rho[0] / base.rho[0];
    CHECK(rho_ratio == doctest::Approx(std::pow(2.0, gas.cv / (gas.cv + 1.0))).epsilon(1e-12));
    const double expected = std::sqrt(2.0 * rho_ratio);
    CHECK(solver.max_wave_speed(doubled) / solver.max_wave_speed(base) ==
          doctest::Approx(expected).epsilon(1e-12));
    const double dense = acoustic_spectral_radius(doubled, gas, d.grid.dx()) /
                         acoustic_spectral_radius(base, gas, d.grid.dx());
    CHECK(dense == doctest::Approx(expected).epsilon(0.02));
}

TEST_CASE("equilibrium is a fixed point over many steps") {
    const auto d = support::compact(0.0, 64);
    for (auto integrator : {Integrator::SspRk2, Integrator::SspRk3}) {
        const LagrangianSolver solver(d.grid, GasParams{}, SolverOptions{integrator, 0.0, 1.0});
        auto state = support::state_of(solver, d);
        const auto start = state;
        const double dt = solver.stable_dt(state, 0.4);
        for (int k = 0; k < 10000; ++k) {
            state = solver.step(state, dt);
        }
        CHECK(state.step == 10000);
        CHECK(state_diff(state, start) <= 1e-13);
    }
}

TEST_CASE("time self-convergence at fixed grid") {
    const auto d = support::compact(1e-3, 64);
    for (auto integrator : {Integrator::SspRk2, Integrator::SspRk3}) {
        const LagrangianSolver solver(d.grid, GasParams{}, SolverOptions{integrator, 0.0, 1.0});
        const auto start = support::state_of(solver, d);
        const double t_end = 0.5;
        const double dt0 = t_end / std::ceil(t_end / solver.stable_dt(start, 0.4));
        std::vector<SimState> finals;
        for (double dt : {dt0, dt0 / 2.0, dt0 / 4.0}) {
            auto s = start;
            const auto steps = static_cast<int>(std::lround(t_end / dt));
            for (int k = 0; k < steps; ++k) {
                s = solver.step(s, dt);
            }
            finals.push_back(s);
        }
        const double ratio = state_diff(finals[0], finals[1]) / state_diff(finals[1], finals[2]);
        MESSAGE(to_string(integrator), " time self-convergence ratio ", ratio);
        CHECK(ratio >= 3.5);
    }
}

TEST_CASE("an oversized time step ends in a state-invalid error") {
    InitialDataSpec spec = pressure_sine(1e-2);
    const auto d = build_initial_data(spec, AnnulusGeometry{}, 64, GasParams{});
    const LagrangianSolver solver(d.grid, GasParams{});
    auto state = support::state_of(solver, d);
    const double dt = 10.0 * solver.stable_dt(state, 1.0);
    bool failed = false;
    try {
        for (int k = 0; k < 500; ++k) {
            state = solver.step(state, dt);
        }
    } catch (const StateInvalidError& e) {
        failed = true;
        CHECK(e.time() > 0.0);
        CHECK(!e.field().empty());
    }
    CHECK(failed);
}

TEST_CASE("volume is conserved along a trajectory") {
    const auto d = support::compact(1e-3, 128);
    const LagrangianSolver solver(d.grid, GasParams{});
    auto state = support::state_of(solver, d);
    const double v0 = total_volume(state.rho, d.grid);
    double worst = 0.0;
    for (int k = 0; k < 20; ++k) {
        state = support::advance(solver, state, 0.1 * (k + 1));
        worst = std::max(worst, std::abs(total_volume(state.rho, d.grid) / v0 - 1.0));
        CHECK(state.r.front() == d.grid.geom.a);
        CHECK(state.r.back() == d.r.back());
        CHECK_NOTHROW(require_increasing(state.r, "trajectory"));
        CHECK(state.u.front() == 0.0);
        CHECK(state.u.back() == 0.0);
        CHECK(state.q.front() == 0.0);
        CHECK(state.q.back() == 0.0);
    }
    CHECK(worst <= 1e-8);
}

TEST_CASE("radiation-off keeps entropy constant to round-off") {
    const auto d = support::compact(1e-3, 64);
    const LagrangianSolver solver(d.grid, GasParams{}, SolverOptions{Integrator::SspRk3, 0.0, 0.0});
    const auto state = support::advance(solver, support::state_of(solver, d), 0.5);
    CHECK(max_diff(state.s, d.s) <= 1e-14);
    CHECK(stencil::max_abs(state.q) == 0.0);
    CHECK(max_diff(state.P, d.P) > 0.0);
}

TEST_CASE("artificial dissipation") {
    const auto d = support::compact(1e-3, 64);
    CHECK_THROWS_AS(LagrangianSolver(d.grid, GasParams{}, SolverOptions{Integrator::SspRk3, -1.0, 1.0}),
                    DomainError);
    const LagrangianSolver plain(d.grid, GasParams{});
    const LagrangianSolver damped(d.grid, GasParams{}, SolverOptions{Integrator::SspRk3, 0.5, 1.0});
    const auto a = support::advance(plain, support::state_of(plain, d), 0.2);
    const auto b = support::advance(damped, support::state_of(damped, d), 0.2);
    CHECK(state_diff(a, b) > 0.0);

    const auto eq = support::compact(0.0, 64);
    const auto still = support::advance(damped, support::state_of(damped, eq), 0.2);
    CHECK(state_diff(still, support::state_of(damped, eq)) <= 1e-13);
}

TEST_CASE("make_state validates its inputs") {
    const auto d = support::compact(1e-3, 32);
    const LagrangianSolver solver(d.grid, GasParams{});
    auto u = d.u;
    u.front() = 1e-3;
    CHECK_THROWS_AS(solver.make_state(d.P, u, d.s, d.r), DomainError);
    auto r = d.r;
    r.front() += 1e-3;
    CHECK_THROWS_AS(solver.make_state(d.P, d.u, d.s, r), DomainError);
    auto P = d.P;
    P.pop_back();
    CHECK_THROWS_AS(solver.make_state(P, d.u, d.s, d.r), InputError);
    P = d.P;
    P[5] = -1.0;
    CHECK_THROWS_AS(solver.make_state(P, d.u, d.s, d.r), StateInvalidError);
    r = d.r;
    std::swap(r[3], r[4]);
    CHECK_THROWS_AS(solver.make_state(d.P, d.u, d.s, r), StateInvalidError);
    CHECK_THROWS_AS(solver.step(support::state_of(solver, d), 0.0), DomainError);
}

TEST_CASE("integrator names") {
    CHECK(parse_integrator("ssp-rk2") == Integrator::SspRk2);
    CHECK(parse_integrator("ssp-rk3") == Integrator::SspRk3);
    CHECK(to_string(Integrator::SspRk2) == "ssp-rk2");
    CHECK(to_string(parse_integrator(to_string(Integrator::SspRk3))) == "ssp-rk3");
    CHECK_THROWS_AS(parse_integrator("euler"), InputError);
}
