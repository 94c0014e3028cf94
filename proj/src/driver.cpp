#include "radeuler/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "radeuler/errors.hpp"
#include "radeuler/io.hpp"

namespace radeuler {

namespace {

// Times k * interval for k = 1, 2, ... strictly inside (0, t_final], plus t_final.
class Schedule {
public:
    Schedule(double interval, double t_final) : interval_(interval), t_final_(t_final) {}

    double next() const {
        if (!(interval_ > 0.0)) {
            return std::numeric_limits<double>::infinity();
        }
        return std::min(static_cast<double>(k_ + 1) * interval_, t_final_);
    }

    bool due(double t) const { return t >= next() - 1e-12 * std::max(1.0, t); }

    void advance(double t) {
        while (interval_ > 0.0 && static_cast<double>(k_ + 1) * interval_ <= t + 1e-12 * std::max(1.0, t)) {
            ++k_;
        }
    }

private:
    double interval_;
    double t_final_;
    std::size_t k_ = 0;
};

void run_nonlinear(const RunConfig& config, const InitialData& data, RunResult& result) {
    const LagrangianSolver solver(data.grid, config.gas, solver_options(config));
    const double coupling = solver.options().radiation_coupling;
    auto state = solver.make_state(data.P, data.u, data.s, data.r);
    DiagnosticsAccumulator acc(data.grid, config.gas, coupling);
    const double t_final = config.time.t_final;
    Schedule out(config.time.output_interval, t_final);
    Schedule diag(config.diagnostics.interval, t_final);

    result.trajectory.push_back(snapshot_of(state));
    if (config.diagnostics.enabled) {
        acc.add(state);
    }
    try {
        while (state.t < t_final) {
            double target = t_final;
            if (config.diagnostics.enabled) {
                target = std::min(target, diag.next());
            }
            target = std::min(target, out.next());
            double dt = solver.stable_dt(state, config.time.cfl);
            const bool lands = state.t + dt >= target - 1e-12 * std::max(1.0, target);
            if (lands) {
                dt = target - state.t;
            } else if (state.t + 2.0 * dt > target) {
                dt = 0.5 * (target - state.t);
            }
            state = solver.step(state, dt);
            if (lands) {
                state.t = target;
            }
            ++result.steps;
            const bool final_step = state.t >= t_final;
            if (config.time.output_interval == 0.0 || out.due(state.t) || final_step) {
                result.trajectory.push_back(snapshot_of(state));
                out.advance(state.t);
            }
            if (config.diagnostics.enabled && (diag.due(state.t) || final_step)) {
                acc.add(state);
                diag.advance(state.t);
            }
        }
    } catch (const StateInvalidError& e) {
        result.status = RunStatus::StateInvalid;
        result.failure = e.what();
    }
    result.diagnostics = acc.records();
}

// Converts slices of a linearized solution to snapshots and diagnostics.
void record_slices(const RunConfig& config, const InitialData& data, const SpaceTimeFields& sol,
                   const Field& r0, RunResult& result) {
    const LagrangianSolver solver(data.grid, config.gas, solver_options(config));
    DiagnosticsAccumulator acc(data.grid, config.gas, solver.options().radiation_coupling);
    const double t_final = sol.times.back();
    Schedule out(config.time.output_interval, t_final);
    Schedule diag(config.diagnostics.interval, t_final);
    Field r = r0;
    const std::size_t n = data.grid.num_nodes();
    for (std::size_t k = 0; k < sol.num_slices(); ++k) {
        const double t = sol.times[k];
        if (k > 0) {
            const double h = t - sol.times[k - 1];
            for (std::size_t i = 0; i < n; ++i) {
                r[i] += 0.5 * h * (sol.u[k - 1][i] + sol.u[k][i]);
            }
        }
        const bool first = k == 0;
        const bool last = k + 1 == sol.num_slices();
        const bool want_out = first || last || config.time.output_interval == 0.0 || out.due(t);
        const bool want_diag = config.diagnostics.enabled && (first || last || diag.due(t));
        if (!want_out && !want_diag) {
            continue;
        }
        Field P(n), s(n);
        for (std::size_t i = 0; i < n; ++i) {
            P[i] = 1.0 + sol.P[k][i];
            s[i] = 1.0 + sol.s[k][i];
        }
        auto state = solver.make_state(std::move(P), sol.u[k], std::move(s), r, t);
        if (want_out) {
            auto snap = snapshot_of(state);
            snap.q = sol.q[k];
            result.trajectory.push_back(std::move(snap));
            out.advance(t);
        }
        if (want_diag) {
            acc.add(state);
            diag.advance(t);
        }
    }
    result.diagnostics = acc.records();
    result.steps = sol.num_slices() - 1;
}

void run_linear(const RunConfig& config, const InitialData& data, RunResult& result) {
    const LagrangianSolver solver(data.grid, config.gas, solver_options(config));
    const auto init = linearized_init(data);
    const auto state0 = solver.make_state(data.P, data.u, data.s, data.r);
    const double max_dt = solver.stable_dt(state0, config.time.cfl);
    const double coupling = solver.options().radiation_coupling;

    if (config.mode == RunMode::Linearized) {
        if (config.time.t_final == 0.0) {
            result.trajectory.push_back(snapshot_of(state0));
            if (config.diagnostics.enabled) {
                DiagnosticsAccumulator acc(data.grid, config.gas, coupling);
                acc.add(state0);
                result.diagnostics = acc.records();
            }
            return;
        }
        const auto times = slice_times(config.time.t_final, max_dt);
        const auto frozen = freeze(constant_iterate(init, times), init.r0, data.grid, config.gas);
        const auto sol = solve_linearized(frozen, init, data.grid, config.gas, coupling);
        record_slices(config, data, sol, init.r0, result);
        return;
    }

    PicardProblem problem{data.grid, config.gas, init, *config.picard.T, max_dt, coupling};
    auto pr = picard_iterate(problem, config.picard.k_max, config.picard.tol);
    result.picard.deltas = pr.deltas;
    result.picard.ratios = pr.ratios;
    result.picard.ratio_index = pr.ratio_index;
    result.picard.wall_seconds = pr.wall_seconds;
    result.picard.converged = pr.converged;
    if (pr.failed) {
        result.status = RunStatus::Failed;
        result.failure = pr.failure;
    }
    record_slices(config, data, pr.iterates.back(), init.r0, result);
}

}  // namespace

Snapshot snapshot_of(const SimState& state) {
    return Snapshot{state.t, state.P, state.u, state.s, state.q, state.r, state.rho, state.theta};
}

std::string to_string(RunStatus status) {
    switch (status) {
        case RunStatus::Completed:
            return "completed";
        case RunStatus::StateInvalid:
            return "state-invalid";
        case RunStatus::Failed:
            return "failed";
    }
    return "failed";
}

InitialData initial_data_from_config(const RunConfig& config) {
    auto spec = initial_data_spec(config);
    if (spec.profile == ProfileKind::Custom) {
        // A field without a sample file is unperturbed.
        const auto load = [&](const std::string& path) {
            return path.empty() ? std::vector<double>(config.n + 1, 0.0)
                                : samples_on_grid(load_samples(path), config.geometry, config.n + 1);
        };
        spec.custom_P = load(config.initial.custom_P);
        spec.custom_u = load(config.initial.custom_u);
        spec.custom_s = load(config.initial.custom_s);
    }
    return build_initial_data(spec, config.geometry, config.n, config.gas);
}

LinearizedInit linearized_init(const InitialData& data) {
    LinearizedInit init{data.P, data.u, data.s, data.r};
    for (auto& v : init.P) {
        v -= 1.0;
    }
    for (auto& v : init.s) {
        v -= 1.0;
    }
    return init;
}

RunResult run(const RunConfig& config) {
    config.validate();
    const auto start = std::chrono::steady_clock::now();
    const auto data = initial_data_from_config(config);
    RunResult result{config, data.grid, {}, {}, {}, {}, RunStatus::Completed, {}, 0, 0.0};
    if (config.mode == RunMode::Nonlinear || config.mode == RunMode::RadiationOff) {
        run_nonlinear(config, data, result);
    } else {
        run_linear(config, data, result);
    }
    if (!result.diagnostics.empty()) {
        result.apriori = apriori_monitor(result.diagnostics, config.diagnostics.c0_ceiling);
    }
    result.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace radeuler
