#include "radeuler/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radeuler/errors.hpp"
#include "radeuler/radiation.hpp"
#include "radeuler/stencil.hpp"

namespace radeuler {

namespace {

void check_finite_positive(std::span<const double> f, const char* name, double t) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!(f[i] > 0.0) || !std::isfinite(f[i])) {
            throw StateInvalidError(name, i, t, f[i]);
        }
    }
}

void check_finite(std::span<const double> f, const char* name, double t) {
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (!std::isfinite(f[i])) {
            throw StateInvalidError(name, i, t, f[i]);
        }
    }
}

void add_dissipation(Field& tendency, std::span<const double> f, double nu) {
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        tendency[i] += nu * (f[i + 1] - 2.0 * f[i] + f[i - 1]);
    }
}

}  // namespace

Integrator parse_integrator(const std::string& name) {
    if (name == "ssp-rk2") {
        return Integrator::SspRk2;
    }
    if (name == "ssp-rk3") {
        return Integrator::SspRk3;
    }
    throw InputError("unknown integrator '" + name + "' (expected ssp-rk2 or ssp-rk3)");
}

std::string to_string(Integrator integrator) {
    return integrator == Integrator::SspRk2 ? "ssp-rk2" : "ssp-rk3";
}

LagrangianSolver::LagrangianSolver(MassGrid grid, GasParams gas, SolverOptions options)
    : grid_(grid), gas_(gas), options_(options) {
    grid_.validate();
    gas_.validate();
    if (!(options_.nu >= 0.0)) {
        throw DomainError("solver: artificial dissipation nu must be >= 0");
    }
}

SimState LagrangianSolver::make_state(Field P, Field u, Field s, Field r, double t) const {
    const std::size_t n = grid_.num_nodes();
    if (P.size() != n || u.size() != n || s.size() != n || r.size() != n) {
        throw InputError("make_state: field lengths do not match the grid");
    }
    if (u.front() != 0.0 || u.back() != 0.0) {
        throw DomainError("make_state: velocity must vanish at both boundaries");
    }
    if (r.front() != grid_.geom.a) {
        throw DomainError("make_state: r(0) must equal the inner radius");
    }
    SimState state;
    state.t = t;
    state.P = std::move(P);
    state.u = std::move(u);
    state.s = std::move(s);
    state.r = std::move(r);
    refresh(state);
    return state;
}

LagrangianSolver::Stage LagrangianSolver::evaluate(std::span<const double> P,
                                                   std::span<const double> s,
                                                   std::span<const double> r, double t) const {
    check_finite_positive(P, "P", t);
    check_finite(s, "s", t);
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (!(r[i] > r[i - 1]) || !std::isfinite(r[i])) {
            throw StateInvalidError("r", i, t, r[i]);
        }
    }
    const std::size_t n = P.size();
    Stage st;
    st.rho.resize(n);
    st.theta.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        st.rho[i] = rho_from_P_s(P[i], s[i], gas_);
        st.theta[i] = P[i] / st.rho[i];
    }
    check_finite_positive(st.rho, "rho", t);
    check_finite_positive(st.theta, "theta", t);
    auto flux = solve_radiative_flux(P, s, st.rho, st.theta, r, grid_, gas_,
                                     options_.radiation_coupling);
    st.q = std::move(flux.q);
    st.w = std::move(flux.w);
    return st;
}

Tendencies LagrangianSolver::tendencies(std::span<const double> P, std::span<const double> u,
                                        std::span<const double> r, const Stage& stage) const {
    const std::size_t n = P.size();
    const double dx = grid_.dx();
    Field r2u(n);
    for (std::size_t i = 0; i < n; ++i) {
        r2u[i] = r[i] * r[i] * u[i];
    }
    const auto div_u = stencil::derivative(r2u, dx);
    const auto div_q = stencil::derivative(stage.w, dx);
    const auto Px = stencil::derivative(P, dx);
    const double kp = gas_.pressure_factor();
    const double kq = 1.0 / gas_.cv;

    Tendencies out{Field(n), Field(n), Field(n), Field(u.begin(), u.end())};
    for (std::size_t i = 0; i < n; ++i) {
        out.P[i] = -kp * P[i] * stage.rho[i] * div_u[i] - kq * stage.rho[i] * div_q[i];
        out.u[i] = -r[i] * r[i] * Px[i];
        out.s[i] = -div_q[i] / stage.theta[i];
    }
    out.u.front() = 0.0;
    out.u.back() = 0.0;
    return out;
}

void LagrangianSolver::refresh(SimState& state) const {
    auto st = evaluate(state.P, state.s, state.r, state.t);
    state.rho = std::move(st.rho);
    state.theta = std::move(st.theta);
    state.q = std::move(st.q);
    state.w = std::move(st.w);
    state.cache_step = state.step;
}

Tendencies LagrangianSolver::rhs(const SimState& state) const {
    const auto st = evaluate(state.P, state.s, state.r, state.t);
    auto out = tendencies(state.P, state.u, state.r, st);
    if (options_.nu > 0.0) {
        add_dissipation(out.P, state.P, options_.nu);
        add_dissipation(out.u, state.u, options_.nu);
        add_dissipation(out.s, state.s, options_.nu);
    }
    return out;
}

double LagrangianSolver::max_wave_speed(const SimState& state) const {
    const double kp = gas_.pressure_factor();
    double lam = 0.0;
    for (std::size_t i = 0; i < state.P.size(); ++i) {
        const double rho = state.caches_current() ? state.rho[i]
                                                  : rho_from_P_s(state.P[i], state.s[i], gas_);
        lam = std::max(lam, state.r[i] * state.r[i] * std::sqrt(kp * state.P[i] * rho));
    }
    return lam;
}

double LagrangianSolver::stable_dt(const SimState& state, double cfl) const {
    if (!(cfl > 0.0) || !(cfl <= 1.0)) {
        throw DomainError("stable_dt: cfl must lie in (0, 1], got " + std::to_string(cfl));
    }
    return cfl * grid_.dx() / max_wave_speed(state);
}

namespace {

// c0 * base + c1 * (cur + h * k), with u and the boundary radii pinned.
SimState combine(const SimState& base, double c0, const SimState& cur, double c1,
                 const Tendencies& k, double h) {
    const std::size_t n = base.P.size();
    SimState out;
    out.P.resize(n);
    out.u.resize(n);
    out.s.resize(n);
    out.r.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.P[i] = c0 * base.P[i] + c1 * (cur.P[i] + h * k.P[i]);
        out.u[i] = c0 * base.u[i] + c1 * (cur.u[i] + h * k.u[i]);
        out.s[i] = c0 * base.s[i] + c1 * (cur.s[i] + h * k.s[i]);
        out.r[i] = c0 * base.r[i] + c1 * (cur.r[i] + h * k.r[i]);
    }
    out.u.front() = 0.0;
    out.u.back() = 0.0;
    out.r.front() = base.r.front();
    out.r.back() = base.r.back();
    return out;
}

}  // namespace

SimState LagrangianSolver::step(const SimState& state, double dt) const {
    if (!(dt > 0.0)) {
        throw DomainError("step: dt must be positive");
    }
    Tendencies k1;
    if (state.caches_current()) {
        k1 = tendencies(state.P, state.u, state.r, Stage{state.rho, state.theta, state.q, state.w});
        if (options_.nu > 0.0) {
            add_dissipation(k1.P, state.P, options_.nu);
            add_dissipation(k1.u, state.u, options_.nu);
            add_dissipation(k1.s, state.s, options_.nu);
        }
    } else {
        k1 = rhs(state);
    }

    SimState next;
    SimState u1 = combine(state, 0.0, state, 1.0, k1, dt);
    u1.t = state.t + dt;
    if (options_.integrator == Integrator::SspRk2) {
        next = combine(state, 0.5, u1, 0.5, rhs(u1), dt);
    } else {
        SimState u2 = combine(state, 0.75, u1, 0.25, rhs(u1), dt);
        u2.t = state.t + 0.5 * dt;
        next = combine(state, 1.0 / 3.0, u2, 2.0 / 3.0, rhs(u2), dt);
    }
    next.t = state.t + dt;
    next.step = state.step + 1;
    refresh(next);
    return next;
}

}  // namespace radeuler
