#include "radeuler/linearized_picard.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "radeuler/errors.hpp"
#include "radeuler/radiation.hpp"
#include "radeuler/stencil.hpp"

namespace radeuler {

FrozenFields freeze(const SpaceTimeFields& iterate, const Field& r0, const MassGrid& grid,
                    const GasParams& gas) {
    const std::size_t slices = iterate.num_slices();
    const std::size_t n = grid.num_nodes();
    if (slices == 0 || r0.size() != n) {
        throw InputError("freeze: empty iterate or radius length mismatch");
    }
    FrozenFields f;
    f.times = iterate.times;
    f.P.resize(slices);
    f.u = iterate.u;
    f.s.resize(slices);
    f.rho.resize(slices);
    f.theta.resize(slices);
    f.r.resize(slices);
    for (std::size_t k = 0; k < slices; ++k) {
        if (iterate.u[k].front() != 0.0 || iterate.u[k].back() != 0.0) {
            throw DomainError("freeze: u must vanish at both ends on slice " + std::to_string(k));
        }
        f.P[k].resize(n);
        f.s[k].resize(n);
        f.rho[k].resize(n);
        f.theta[k].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double P = 1.0 + iterate.P[k][i];
            if (!(P > 0.0) || !std::isfinite(P)) {
                throw DomainError("freeze: non-positive pressure on slice " + std::to_string(k) +
                                  ", node " + std::to_string(i));
            }
            f.P[k][i] = P;
            f.s[k][i] = 1.0 + iterate.s[k][i];
            f.rho[k][i] = rho_from_P_s(P, f.s[k][i], gas);
            f.theta[k][i] = P / f.rho[k][i];
        }
        if (k == 0) {
            f.r[0] = r0;
        } else {
            const double h = f.times[k] - f.times[k - 1];
            f.r[k].resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                f.r[k][i] = f.r[k - 1][i] + 0.5 * h * (f.u[k - 1][i] + f.u[k][i]);
            }
        }
        require_increasing(f.r[k], "freeze");
    }
    return f;
}

SpaceTimeFields constant_iterate(const LinearizedInit& init, const std::vector<double>& times) {
    SpaceTimeFields it;
    it.times = times;
    const std::size_t slices = times.size();
    it.P.assign(slices, init.P);
    it.u.assign(slices, init.u);
    it.s.assign(slices, init.s);
    it.q.assign(slices, Field(init.P.size(), 0.0));
    return it;
}

SpaceTimeFields solve_linearized(const FrozenFields& frozen, const LinearizedInit& init,
                                 const MassGrid& grid, const GasParams& gas,
                                 double radiation_coupling) {
    const std::size_t slices = frozen.times.size();
    const std::size_t n = grid.num_nodes();
    const double dx = grid.dx();
    if (init.P.size() != n || init.u.size() != n || init.s.size() != n) {
        throw InputError("solve_linearized: initial fields do not match the grid");
    }
    if (init.u.front() != 0.0 || init.u.back() != 0.0) {
        throw DomainError("solve_linearized: u0 must vanish at both ends");
    }
    if (slices < 2) {
        throw InputError("solve_linearized: need at least two time slices");
    }

    SpaceTimeFields out;
    out.times = frozen.times;
    out.q.resize(slices);

    // 1. Flux on every slice from the frozen state only; slices are independent.
    std::vector<Field> wx(slices);
    for (std::size_t k = 0; k < slices; ++k) {
        auto flux = solve_radiative_flux(frozen.P[k], frozen.s[k], frozen.rho[k], frozen.theta[k],
                                         frozen.r[k], grid, gas, radiation_coupling);
        out.q[k] = std::move(flux.q);
        wx[k] = stencil::derivative(flux.w, dx);
    }

    // 2. Entropy by quadrature in time.
    out.s.resize(slices);
    out.s[0] = init.s;
    for (std::size_t k = 1; k < slices; ++k) {
        const double h = out.times[k] - out.times[k - 1];
        out.s[k].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            out.s[k][i] = out.s[k - 1][i] - 0.5 * h *
                                                (wx[k - 1][i] / frozen.theta[k - 1][i] +
                                                 wx[k][i] / frozen.theta[k][i]);
        }
    }

    // 3. Symmetric hyperbolic (P, u) subsystem.
    const double kp = gas.pressure_factor();
    const double kq = 1.0 / gas.cv;
    auto tendency = [&](const Field& P, const Field& u, std::size_t k, Field& Pt, Field& ut) {
        const auto& r = frozen.r[k];
        Field r2u(n);
        for (std::size_t i = 0; i < n; ++i) {
            r2u[i] = r[i] * r[i] * u[i];
        }
        const auto div_u = stencil::derivative(r2u, dx);
        const auto Px = stencil::derivative(P, dx);
        Pt.resize(n);
        ut.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double rho = frozen.rho[k][i];
            Pt[i] = -kp * frozen.P[k][i] * rho * div_u[i] - kq * rho * wx[k][i];
            ut[i] = -r[i] * r[i] * Px[i];
        }
        ut.front() = 0.0;
        ut.back() = 0.0;
    };

    out.P.resize(slices);
    out.u.resize(slices);
    out.P[0] = init.P;
    out.u[0] = init.u;
    Field Pt1, ut1, Pt2, ut2;
    for (std::size_t k = 0; k + 1 < slices; ++k) {
        const double h = out.times[k + 1] - out.times[k];
        tendency(out.P[k], out.u[k], k, Pt1, ut1);
        Field Pm = stencil::axpy(h, Pt1, out.P[k]);
        Field um = stencil::axpy(h, ut1, out.u[k]);
        um.front() = 0.0;
        um.back() = 0.0;
        tendency(Pm, um, k + 1, Pt2, ut2);
        Field Pn(n), un(n);
        for (std::size_t i = 0; i < n; ++i) {
            Pn[i] = 0.5 * (out.P[k][i] + Pm[i] + h * Pt2[i]);
            un[i] = 0.5 * (out.u[k][i] + um[i] + h * ut2[i]);
        }
        un.front() = 0.0;
        un.back() = 0.0;
        out.P[k + 1] = std::move(Pn);
        out.u[k + 1] = std::move(un);
    }
    return out;
}

double sup_l2_distance(const SpaceTimeFields& a, const SpaceTimeFields& b, double dx) {
    if (a.num_slices() != b.num_slices()) {
        throw InputError("sup_l2_distance: slice counts differ");
    }
    double sup = 0.0;
    for (std::size_t k = 0; k < a.num_slices(); ++k) {
        const double dP = stencil::l2_norm(stencil::difference(a.P[k], b.P[k]), dx);
        const double du = stencil::l2_norm(stencil::difference(a.u[k], b.u[k]), dx);
        const double ds = stencil::l2_norm(stencil::difference(a.s[k], b.s[k]), dx);
        sup = std::max(sup, std::sqrt(dP * dP + du * du + ds * ds));
    }
    return sup;
}

std::vector<double> slice_times(double T, double max_dt) {
    if (!(T > 0.0) || !(max_dt > 0.0)) {
        throw DomainError("slice_times: T and dt must be positive");
    }
    const auto steps = static_cast<std::size_t>(std::ceil(T / max_dt - 1e-12));
    std::vector<double> times(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) {
        times[k] = T * static_cast<double>(k) / static_cast<double>(steps);
    }
    return times;
}

PicardResult picard_iterate(const PicardProblem& problem, int k_max, double tol) {
    if (k_max < 1) {
        throw DomainError("picard_iterate: k_max must be >= 1");
    }
    PicardResult res;
    const double dx = problem.grid.dx();
    const auto times = slice_times(problem.T, problem.dt > 0.0 ? problem.dt : problem.T);
    res.iterates.push_back(constant_iterate(problem.init, times));

    for (int k = 0; k < k_max; ++k) {
        const auto start = std::chrono::steady_clock::now();
        try {
            const auto frozen = freeze(res.iterates.back(), problem.init.r0, problem.grid, problem.gas);
            res.iterates.push_back(solve_linearized(frozen, problem.init, problem.grid, problem.gas,
                                                    problem.radiation_coupling));
        } catch (const std::exception& e) {
            res.failed = true;
            res.failure = "iterate " + std::to_string(k + 1) + ": " + e.what();
            break;
        }
        const auto stop = std::chrono::steady_clock::now();
        res.wall_seconds.push_back(std::chrono::duration<double>(stop - start).count());

        const std::size_t last = res.iterates.size() - 1;
        res.deltas.push_back(sup_l2_distance(res.iterates[last], res.iterates[last - 1], dx));
        if (res.deltas.size() >= 2) {
            const double den = res.deltas[res.deltas.size() - 2];
            if (den >= 1e-14) {
                res.ratios.push_back(res.deltas.back() / den);
                res.ratio_index.push_back(res.deltas.size() - 2);
            }
        }
        if (res.deltas.back() <= tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

}  // namespace radeuler
