#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "radeuler/config.hpp"
#include "radeuler/diagnostics.hpp"
#include "radeuler/evolution.hpp"
#include "radeuler/initial_data.hpp"
#include "radeuler/linearized_picard.hpp"

namespace radeuler {

/// Nodal fields at one output time, absolute variables.
struct Snapshot {
    double t = 0.0;
    Field P, u, s, q, r, rho, theta;
};

Snapshot snapshot_of(const SimState& state);

enum class RunStatus { Completed, StateInvalid, Failed };
std::string to_string(RunStatus status);

struct PicardReport {
    std::vector<double> deltas;
    std::vector<double> ratios;
    std::vector<std::size_t> ratio_index;
    std::vector<double> wall_seconds;
    bool converged = false;
};

struct RunResult {
    RunConfig config;
    MassGrid grid;
    std::vector<Snapshot> trajectory;
    std::vector<DiagnosticRecord> diagnostics;
    AprioriResult apriori;
    PicardReport picard;  ///< filled in picard mode only
    RunStatus status = RunStatus::Completed;
    std::string failure;
    std::size_t steps = 0;
    double wall_seconds = 0.0;
};

/// Initial data for a configuration, reading custom sample files when needed.
InitialData initial_data_from_config(const RunConfig& config);

/// Perturbation form of initial data for the linearized solver.
LinearizedInit linearized_init(const InitialData& data);

/// Executes the configured mode. Nonlinear steps are shortened so that every
/// output and diagnostics time is hit exactly. A state-invalid error ends the
/// run early; the partial trajectory is kept and the status records it.
/// Configuration and construction errors propagate.
RunResult run(const RunConfig& config);

}  // namespace radeuler
