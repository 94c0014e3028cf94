#include "radeuler/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "radeuler/errors.hpp"

namespace radeuler {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
        throw ConfigError(key + ": expected a finite number, got '" + v + "'");
    }
    return out;
}

long long to_integer(const std::string& key, const std::string& v) {
    long long out = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") {
        return true;
    }
    if (v == "false" || v == "0" || v == "no" || v == "off") {
        return false;
    }
    throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

struct ConfigField {
    const char* key;
    std::function<std::optional<std::string>(const RunConfig&)> get;
    std::function<void(RunConfig&, const std::string&, const std::string&)> set;
};

template <typename T>
ConfigField number(const char* key, T RunConfig::*group, double T::*member) {
    return {key, [=](const RunConfig& c) { return std::optional(format_double(c.*group.*member)); },
            [=](RunConfig& c, const std::string& k, const std::string& v) {
                c.*group.*member = to_double(k, v);
            }};
}

const std::vector<ConfigField>& fields() {
    static const std::vector<ConfigField> table = {
        number("geometry.a", &RunConfig::geometry, &AnnulusGeometry::a),
        number("geometry.b", &RunConfig::geometry, &AnnulusGeometry::b),
        number("gas.cv", &RunConfig::gas, &GasParams::cv),
        number("gas.A", &RunConfig::gas, &GasParams::A),
        {"grid.n", [](const RunConfig& c) { return std::optional(std::to_string(c.n)); },
         [](RunConfig& c, const std::string& k, const std::string& v) {
             const auto n = to_integer(k, v);
             if (n < 4) {
                 throw ConfigError(k + ": must be >= 4, got " + v);
             }
             c.n = static_cast<std::size_t>(n);
         }},
        number("time.cfl", &RunConfig::time, &TimeConfig::cfl),
        number("time.t_final", &RunConfig::time, &TimeConfig::t_final),
        number("time.output_interval", &RunConfig::time, &TimeConfig::output_interval),
        {"time.integrator",
         [](const RunConfig& c) { return std::optional(to_string(c.time.integrator)); },
         [](RunConfig& c, const std::string& k, const std::string& v) {
             try {
                 c.time.integrator = parse_integrator(v);
             } catch (const InputError& e) {
                 throw ConfigError(k + ": " + e.what());
             }
         }},
        {"run.mode", [](const RunConfig& c) { return std::optional(to_string(c.mode)); },
         [](RunConfig& c, const std::string&, const std::string& v) { c.mode = parse_mode(v); }},
        {"run.output_dir", [](const RunConfig& c) { return std::optional(c.output_dir); },
         [](RunConfig& c, const std::string&, const std::string& v) { c.output_dir = v; }},
        {"run.nu", [](const RunConfig& c) { return std::optional(format_double(c.nu)); },
         [](RunConfig& c, const std::string& k, const std::string& v) { c.nu = to_double(k, v); }},
        number("initial.epsilon", &RunConfig::initial, &InitialConfig::epsilon),
        {"initial.profile",
         [](const RunConfig& c) { return std::optional(to_string(c.initial.profile)); },
         [](RunConfig& c, const std::string& k, const std::string& v) {
             try {
                 c.initial.profile = parse_profile(v);
             } catch (const InputError& e) {
                 throw ConfigError(k + ": " + e.what());
             }
         }},
        {"initial.flatness_order",
         [](const RunConfig& c) { return std::optional(std::to_string(c.initial.flatness_order)); },
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.initial.flatness_order = static_cast<int>(to_integer(k, v));
         }},
        number("initial.weight_P", &RunConfig::initial, &InitialConfig::weight_P),
        number("initial.weight_u", &RunConfig::initial, &InitialConfig::weight_u),
        number("initial.weight_s", &RunConfig::initial, &InitialConfig::weight_s),
        number("initial.center", &RunConfig::initial, &InitialConfig::center),
        number("initial.width", &RunConfig::initial, &InitialConfig::width),
        number("initial.sharpness", &RunConfig::initial, &InitialConfig::sharpness),
        {"initial.custom_P", [](const RunConfig& c) { return std::optional(c.initial.custom_P); },
         [](RunConfig& c, const std::string&, const std::string& v) { c.initial.custom_P = v; }},
        {"initial.custom_u", [](const RunConfig& c) { return std::optional(c.initial.custom_u); },
         [](RunConfig& c, const std::string&, const std::string& v) { c.initial.custom_u = v; }},
        {"initial.custom_s", [](const RunConfig& c) { return std::optional(c.initial.custom_s); },
         [](RunConfig& c, const std::string&, const std::string& v) { c.initial.custom_s = v; }},
        {"picard.T",
         [](const RunConfig& c) {
             return c.picard.T ? std::optional(format_double(*c.picard.T)) : std::nullopt;
         },
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.picard.T = to_double(k, v);
         }},
        {"picard.k_max",
         [](const RunConfig& c) { return std::optional(std::to_string(c.picard.k_max)); },
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.picard.k_max = static_cast<int>(to_integer(k, v));
         }},
        number("picard.tol", &RunConfig::picard, &PicardConfig::tol),
        {"diagnostics.enabled",
         [](const RunConfig& c) {
             return std::optional(std::string(c.diagnostics.enabled ? "true" : "false"));
         },
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.diagnostics.enabled = to_bool(k, v);
         }},
        number("diagnostics.interval", &RunConfig::diagnostics, &DiagnosticsConfig::interval),
        number("diagnostics.c0_ceiling", &RunConfig::diagnostics, &DiagnosticsConfig::c0_ceiling),
    };
    return table;
}

void require(bool ok, const std::string& key, const std::string& constraint) {
    if (!ok) {
        throw ConfigError(key + ": " + constraint);
    }
}

}  // namespace

RunMode parse_mode(const std::string& name) {
    if (name == "nonlinear") {
        return RunMode::Nonlinear;
    }
    if (name == "linearized") {
        return RunMode::Linearized;
    }
    if (name == "picard") {
        return RunMode::Picard;
    }
    if (name == "radiation-off") {
        return RunMode::RadiationOff;
    }
    throw ConfigError("run.mode: unknown mode '" + name +
                      "' (expected nonlinear, linearized, picard, radiation-off)");
}

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::Nonlinear:
            return "nonlinear";
        case RunMode::Linearized:
            return "linearized";
        case RunMode::Picard:
            return "picard";
        case RunMode::RadiationOff:
            return "radiation-off";
    }
    return "nonlinear";
}

std::string format_double(double v) {
    char buf[40];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ptr);
}

void RunConfig::validate() const {
    require(geometry.a > 0.0, "geometry.a", "must be > 0");
    require(geometry.b > geometry.a, "geometry.b", "must be > geometry.a");
    require(gas.cv > 0.0, "gas.cv", "must be > 0");
    require(gas.A > 0.0, "gas.A", "must be > 0");
    require(n >= 4, "grid.n", "must be >= 4");
    require(time.cfl > 0.0 && time.cfl <= 1.0, "time.cfl", "must lie in (0, 1]");
    require(time.t_final >= 0.0, "time.t_final", "must be >= 0");
    require(time.output_interval >= 0.0, "time.output_interval", "must be >= 0");
    require(nu >= 0.0, "run.nu", "must be >= 0");
    require(initial.epsilon >= 0.0, "initial.epsilon", "must be >= 0");
    require(initial.flatness_order >= 1, "initial.flatness_order", "must be >= 1");
    require(initial.center > 0.0 && initial.center < 1.0, "initial.center", "must lie in (0, 1)");
    require(initial.width > 0.0, "initial.width", "must be > 0");
    require(initial.center - initial.width >= 0.0 && initial.center + initial.width <= 1.0,
            "initial.width", "bump support center +- width must lie inside [0, 1]");
    require(initial.sharpness > 0.0, "initial.sharpness", "must be > 0");
    if (initial.profile == ProfileKind::Custom) {
        require(!initial.custom_P.empty() || !initial.custom_u.empty() || !initial.custom_s.empty(),
                "initial.custom_P", "custom profile needs at least one sample file");
    }
    if (mode == RunMode::Picard) {
        require(picard.T.has_value(), "picard.T", "required when run.mode = picard");
    }
    if (picard.T) {
        require(*picard.T > 0.0, "picard.T", "must be > 0");
    }
    require(picard.k_max >= 1, "picard.k_max", "must be >= 1");
    require(picard.tol >= 0.0, "picard.tol", "must be >= 0");
    require(diagnostics.interval > 0.0, "diagnostics.interval", "must be > 0");
    require(diagnostics.c0_ceiling > 0.0, "diagnostics.c0_ceiling", "must be > 0");
}

void apply_override(RunConfig& config, const std::string& dotted_key, const std::string& value) {
    for (const auto& f : fields()) {
        if (dotted_key == f.key) {
            f.set(config, dotted_key, trim(value));
            return;
        }
    }
    throw ConfigError(dotted_key + ": unknown configuration key");
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& f : fields()) {
        keys.emplace_back(f.key);
    }
    return keys;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw ConfigError("line " + std::to_string(lineno) + ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        }
        const auto key = trim(line.substr(0, eq));
        if (section.empty()) {
            throw ConfigError(key + ": key outside of any [section]");
        }
        apply_override(config, section + "." + key, line.substr(eq + 1));
    }
    config.validate();
    return config;
}

RunConfig parse_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

std::string write_config(const RunConfig& config) {
    std::ostringstream out;
    std::string section;
    for (const auto& f : fields()) {
        const std::string key = f.key;
        const auto dot = key.find('.');
        const auto sec = key.substr(0, dot);
        if (sec != section) {
            out << (section.empty() ? "" : "\n") << "[" << sec << "]\n";
            section = sec;
        }
        if (const auto v = f.get(config)) {
            out << key.substr(dot + 1) << " = " << *v << "\n";
        }
    }
    return out.str();
}

SolverOptions solver_options(const RunConfig& config) {
    SolverOptions opts;
    opts.integrator = config.time.integrator;
    opts.nu = config.nu;
    opts.radiation_coupling = config.mode == RunMode::RadiationOff ? 0.0 : 1.0;
    return opts;
}

InitialDataSpec initial_data_spec(const RunConfig& config) {
    InitialDataSpec spec;
    spec.epsilon = config.initial.epsilon;
    spec.profile = config.initial.profile;
    spec.flatness_order = config.initial.flatness_order;
    spec.weight_P = config.initial.weight_P;
    spec.weight_u = config.initial.weight_u;
    spec.weight_s = config.initial.weight_s;
    spec.center = config.initial.center;
    spec.width = config.initial.width;
    spec.sharpness = config.initial.sharpness;
    return spec;
}

}  // namespace radeuler
