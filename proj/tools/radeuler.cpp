#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "radeuler/config.hpp"
#include "radeuler/driver.hpp"
#include "radeuler/errors.hpp"
#include "radeuler/io.hpp"
#include "radeuler/verify/acceptance.hpp"

namespace {

using radeuler::RunConfig;

// Options shared by run, picard and sweep: a config file, one flag per
// config key, and generic --set key=value overrides.
struct ConfigOptions {
    std::string file;
    std::map<std::string, std::string> flags;
    std::vector<std::string> sets;

    void attach(CLI::App* app) {
        app->add_option("-c,--config", file, "key = value configuration file")
            ->check(CLI::ExistingFile);
        for (const auto& key : radeuler::config_keys()) {
            app->add_option("--" + key, flags[key], "sets " + key)->group("Configuration keys");
        }
        app->add_option("--set", sets, "override as section.key=value (repeatable)");
    }

    RunConfig build() const {
        RunConfig config = file.empty() ? RunConfig{} : radeuler::parse_config_file(file);
        for (const auto& [key, value] : flags) {
            if (!value.empty()) {
                radeuler::apply_override(config, key, value);
            }
        }
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) {
                throw radeuler::ConfigError("--set expects section.key=value, got '" + s + "'");
            }
            radeuler::apply_override(config, s.substr(0, eq), s.substr(eq + 1));
        }
        return config;
    }
};

int execute(const RunConfig& config, const std::filesystem::path& dir, std::ostream& log) {
    const auto result = radeuler::run(config);
    radeuler::write_outputs(result, dir);
    log << "mode " << radeuler::to_string(config.mode) << ": "
        << radeuler::to_string(result.status) << " after " << result.steps << " steps, t = "
        << (result.trajectory.empty() ? 0.0 : result.trajectory.back().t) << ", outputs in "
        << dir.string() << '\n';
    if (!result.failure.empty()) {
        log << "  " << result.failure << '\n';
    }
    return result.status == radeuler::RunStatus::Completed ? 0 : 3;
}

std::vector<std::string> split(const std::string& list) {
    std::vector<std::string> out;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Radiative Euler solver on an annulus in Lagrangian mass coordinates"};
    app.require_subcommand(1);

    ConfigOptions run_opts;
    auto* run_cmd = app.add_subcommand("run", "integrate one configuration and write outputs");
    run_opts.attach(run_cmd);

    ConfigOptions picard_opts;
    auto* picard_cmd = app.add_subcommand("picard", "Picard iteration of the linearized system");
    picard_opts.attach(picard_cmd);

    ConfigOptions sweep_opts;
    std::string sweep_key;
    std::string sweep_values;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
    auto* sweep_cmd = app.add_subcommand("sweep", "run one configuration per value of a key");
    sweep_opts.attach(sweep_cmd);
    sweep_cmd->add_option("--key", sweep_key, "section.key to vary")->required();
    sweep_cmd->add_option("--values", sweep_values, "comma-separated values")->required();
    sweep_cmd->add_option("-j,--jobs", jobs, "concurrent runs")->check(CLI::PositiveNumber);

    std::vector<int> criteria;
    auto* check_cmd = app.add_subcommand("check", "run the acceptance suite and print a report");
    check_cmd->add_option("--criterion", criteria, "restrict to these criterion ids");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            const auto config = run_opts.build();
            config.validate();
            return execute(config, radeuler::output_directory(config.output_dir,
                                                              radeuler::to_string(config.mode)),
                           std::cout);
        }
        if (*picard_cmd) {
            auto config = picard_opts.build();
            config.mode = radeuler::RunMode::Picard;
            config.validate();
            return execute(config, radeuler::output_directory(config.output_dir, "picard"),
                           std::cout);
        }
        if (*sweep_cmd) {
            const auto base = sweep_opts.build();
            const auto values = split(sweep_values);
            const auto root = radeuler::output_directory(base.output_dir, "sweep");
            std::vector<RunConfig> configs;
            std::vector<std::filesystem::path> dirs;
            for (const auto& v : values) {
                auto c = base;
                radeuler::apply_override(c, sweep_key, v);
                c.validate();
                dirs.push_back(root / (sweep_key + "=" + v));
                c.output_dir = dirs.back().string();
                configs.push_back(std::move(c));
            }
            std::vector<std::string> logs(configs.size());
            std::vector<int> codes(configs.size(), 0);
            std::vector<std::thread> pool;
            std::size_t next = 0;
            // Each run owns its directory; no state is shared between runs.
            while (next < configs.size() || !pool.empty()) {
                while (next < configs.size() && pool.size() < jobs) {
                    const std::size_t i = next++;
                    pool.emplace_back([&, i] {
                        std::ostringstream log;
                        try {
                            codes[i] = execute(configs[i], dirs[i], log);
                        } catch (const std::exception& e) {
                            log << "error: " << e.what() << '\n';
                            codes[i] = 1;
                        }
                        logs[i] = log.str();
                    });
                }
                pool.front().join();
                pool.erase(pool.begin());
            }
            int status = 0;
            for (std::size_t i = 0; i < configs.size(); ++i) {
                std::cout << sweep_key << " = " << values[i] << ": " << logs[i];
                status = std::max(status, codes[i]);
            }
            return status;
        }
        if (*check_cmd) {
            const auto results = radeuler::verify::run_acceptance(criteria);
            return radeuler::verify::print_report(results, std::cout) ? 0 : 1;
        }
    } catch (const radeuler::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
