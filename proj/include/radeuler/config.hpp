#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "radeuler/eos.hpp"
#include "radeuler/evolution.hpp"
#include "radeuler/geometry.hpp"
#include "radeuler/initial_data.hpp"

namespace radeuler {

enum class RunMode { Nonlinear, Linearized, Picard, RadiationOff };

RunMode parse_mode(const std::string& name);
std::string to_string(RunMode mode);

struct TimeConfig {
    double cfl = 0.4;
    double t_final = 1.0;
    double output_interval = 0.1;  ///< trajectory snapshot cadence; 0 = every step
    Integrator integrator = Integrator::SspRk3;

    bool operator==(const TimeConfig&) const = default;
};

struct InitialConfig {
    double epsilon = 1e-3;
    ProfileKind profile = ProfileKind::CompactBump;
    int flatness_order = 1;
    double weight_P = 1.0;
    double weight_u = 0.0;
    double weight_s = 1.0;
    double center = 0.5;
    double width = 0.45;
    double sharpness = 4.0;
    std::string custom_P;  ///< sample files, one value per node
    std::string custom_u;
    std::string custom_s;

    bool operator==(const InitialConfig&) const = default;
};

struct PicardConfig {
    std::optional<double> T;  ///< required in picard mode
    int k_max = 8;
    double tol = 0.0;

    bool operator==(const PicardConfig&) const = default;
};

struct DiagnosticsConfig {
    bool enabled = true;
    double interval = 0.01;
    double c0_ceiling = 100.0;

    bool operator==(const DiagnosticsConfig&) const = default;
};

struct RunConfig {
    AnnulusGeometry geometry;
    GasParams gas;
    std::size_t n = 256;
    TimeConfig time;
    RunMode mode = RunMode::Nonlinear;
    std::string output_dir;  ///< empty: derived from the output root
    double nu = 0.0;
    InitialConfig initial;
    PicardConfig picard;
    DiagnosticsConfig diagnostics;

    /// Throws ConfigError naming the offending key and constraint.
    void validate() const;

    bool operator==(const RunConfig&) const = default;
};

/// Parses "[section]" headers and "key = value" lines; '#' starts a comment.
/// Unknown sections or keys, malformed values and failed validation throw ConfigError.
RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Sets one field from a dotted key such as "grid.n" or "initial.epsilon".
/// Does not validate; call validate() once all overrides are applied.
void apply_override(RunConfig& config, const std::string& dotted_key, const std::string& value);

/// All recognized dotted keys, in serialization order.
std::vector<std::string> config_keys();

/// Full serialization; parse_config_text(write_config(c)) == c.
std::string write_config(const RunConfig& config);

/// Solver-level views of the configuration.
SolverOptions solver_options(const RunConfig& config);
InitialDataSpec initial_data_spec(const RunConfig& config);

/// Formats a double with 17 significant digits.
std::string format_double(double v);

}  // namespace radeuler
