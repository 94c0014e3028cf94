#include "radeuler/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "radeuler/config.hpp"
#include "radeuler/driver.hpp"
#include "radeuler/errors.hpp"

namespace radeuler {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

std::string csv_row(std::initializer_list<double> values) {
    std::string row;
    for (const double v : values) {
        if (!row.empty()) {
            row += ',';
        }
        row += format_double(v);
    }
    row += '\n';
    return row;
}

void write_trajectory(const RunResult& result, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << kTrajectoryHeader << '\n';
    for (const auto& snap : result.trajectory) {
        for (std::size_t i = 0; i < snap.P.size(); ++i) {
            out << csv_row({snap.t, result.grid.node(i), snap.P[i], snap.u[i], snap.s[i],
                            snap.q[i], snap.r[i], snap.rho[i], snap.theta[i]});
        }
    }
    finish(out, path);
}

void write_diagnostics(const RunResult& result, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << kDiagnosticsHeader << '\n';
    for (const auto& d : result.diagnostics) {
        out << csv_row({d.t, d.E0, d.D0, d.cumulative_D0, d.norms.m1.sum(), d.norms.m2.sum(),
                        d.norms.m1_tan.sum(), d.norms.m2_tan.sum(), d.norms.dissipation,
                        d.cumulative_dissipation, d.sup_m2_sq, d.apriori_lhs, d.C0});
    }
    finish(out, path);
}

void write_iterations(const RunResult& result, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << kIterationsHeader << '\n';
    const auto& p = result.picard;
    for (std::size_t k = 0; k < p.deltas.size(); ++k) {
        std::string gamma;
        for (std::size_t j = 0; j < p.ratio_index.size(); ++j) {
            if (p.ratio_index[j] + 1 == k) {
                gamma = format_double(p.ratios[j]);
            }
        }
        out << k << ',' << format_double(p.deltas[k]) << ',' << gamma << '\n';
    }
    finish(out, path);
}

void write_eulerian(const RunResult& result, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << kEulerianHeader << '\n';
    if (!result.trajectory.empty()) {
        const auto prof = reconstruct_eulerian(result.trajectory.back(), result.grid);
        for (std::size_t i = 0; i < prof.r.size(); ++i) {
            out << csv_row({prof.r[i], prof.rho[i], prof.u[i], prof.theta[i], prof.P[i],
                            prof.s[i], prof.q[i]});
        }
    }
    finish(out, path);
}

void write_summary(const RunResult& result, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << write_config(result.config) << '\n';
    out << "[result]\n";
    out << "mode = " << to_string(result.config.mode) << '\n';
    out << "status = " << to_string(result.status) << '\n';
    if (!result.failure.empty()) {
        out << "failure = " << result.failure << '\n';
    }
    out << "steps = " << result.steps << '\n';
    out << "t_end = " << format_double(result.trajectory.empty() ? 0.0 : result.trajectory.back().t)
        << '\n';
    out << "total_mass = " << format_double(result.grid.total_mass) << '\n';
    out << "dx = " << format_double(result.grid.dx()) << '\n';
    if (!result.trajectory.empty()) {
        const auto prof = reconstruct_eulerian(result.trajectory.back(), result.grid);
        out << "mass_check_relative_error = " << format_double(prof.mass_error) << '\n';
    }
    out << "wall_seconds = " << format_double(result.wall_seconds) << '\n';
    if (!result.diagnostics.empty()) {
        out << "\n[apriori]\n";
        out << "pass = " << (result.apriori.pass ? "true" : "false") << '\n';
        out << "C0 = " << format_double(result.apriori.C0) << '\n';
        out << "ceiling = " << format_double(result.apriori.ceiling) << '\n';
        out << "reference = " << format_double(result.apriori.reference) << '\n';
        out << "E0_initial = " << format_double(result.diagnostics.front().E0) << '\n';
        out << "E0_final = " << format_double(result.diagnostics.back().E0) << '\n';
    }
    if (result.config.mode == RunMode::Picard) {
        out << "\n[picard]\n";
        out << "iterates = " << result.picard.deltas.size() << '\n';
        out << "converged = " << (result.picard.converged ? "true" : "false") << '\n';
        double total = 0.0;
        for (const double w : result.picard.wall_seconds) {
            total += w;
        }
        out << "wall_seconds = " << format_double(total) << '\n';
    }
    finish(out, path);
}

void write_plot_script(const RunResult& result, const std::filesystem::path& path) {
    auto out = open_for_write(path);
    out << "# gnuplot script; run from this directory: gnuplot plot.gp\n"
           "set datafile separator ','\n"
           "set key autotitle columnhead\n"
           "set terminal png size 1200,900\n"
           "set output 'profiles.png'\n"
           "set multiplot layout 2,2 title 'profiles in mass coordinate (colour = t)'\n"
           "set xlabel 'x'\n"
           "set cblabel 't'\n";
    const char* names[] = {"P", "u", "s", "q"};
    const int columns[] = {3, 4, 5, 6};
    for (int k = 0; k < 4; ++k) {
        out << "set title '" << names[k] << "'\n"
            << "plot 'trajectory.csv' using 2:" << columns[k]
            << ":1 with points pointtype 7 pointsize 0.3 palette notitle\n";
    }
    out << "unset multiplot\n";
    if (!result.diagnostics.empty()) {
        out << "set output 'energy.png'\n"
               "set title 'E0(t)'\n"
               "set xlabel 't'\n"
               "set logscale y\n"
               "plot 'diagnostics.csv' using 1:2 with lines title 'E0'\n"
               "unset logscale y\n";
    }
    if (result.config.mode == RunMode::Picard) {
        out << "set output 'iterations.png'\n"
               "set title 'Picard differences'\n"
               "set xlabel 'k'\n"
               "set logscale y\n"
               "plot 'iterations.csv' using 1:2 with linespoints title 'delta'\n";
    }
    finish(out, path);
}

}  // namespace

EulerianProfile reconstruct_eulerian(const Snapshot& snap, const MassGrid& grid) {
    EulerianProfile prof{snap.r, snap.rho, snap.u, snap.theta, snap.P, snap.s, snap.q, 0.0, 0.0};
    // int r^2 rho dr = int rho dV with V = r^3 / 3, trapezoid in V.
    double mass = 0.0;
    for (std::size_t i = 1; i < snap.r.size(); ++i) {
        const double dV = (std::pow(snap.r[i], 3) - std::pow(snap.r[i - 1], 3)) / 3.0;
        mass += 0.5 * dV * (snap.rho[i - 1] + snap.rho[i]);
    }
    prof.mass = mass;
    prof.mass_error = std::abs(mass - grid.total_mass) / grid.total_mass;
    return prof;
}

void write_outputs(const RunResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    write_trajectory(result, dir / "trajectory.csv");
    write_diagnostics(result, dir / "diagnostics.csv");
    write_eulerian(result, dir / "eulerian.csv");
    if (result.config.mode == RunMode::Picard) {
        write_iterations(result, dir / "iterations.csv");
    }
    write_summary(result, dir / "summary.txt");
    write_plot_script(result, dir / "plot.gp");
}

std::filesystem::path default_output_root() {
    if (const char* env = std::getenv("RADEULER_OUTPUT_ROOT"); env != nullptr && *env != '\0') {
        return env;
    }
    return "runs";
}

std::filesystem::path output_directory(const std::string& configured, const std::string& mode) {
    if (!configured.empty()) {
        return configured;
    }
    return default_output_root() / mode;
}

SampleTable load_samples(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open sample file " + path.string());
    }
    SampleTable table;
    std::size_t columns = 0;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        for (auto& c : line) {
            if (c == ',' || c == '\t' || c == ';' || c == '\r') {
                c = ' ';
            }
        }
        std::istringstream fields(line);
        std::vector<double> row;
        std::string token;
        bool numeric = true;
        while (fields >> token) {
            double v = 0.0;
            const auto* end = token.data() + token.size();
            const auto [ptr, err] = std::from_chars(token.data(), end, v);
            if (err != std::errc() || ptr != end) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (numeric && row.empty()) {
            continue;
        }
        const std::string where = path.string() + ":" + std::to_string(lineno);
        if (!numeric) {
            if (columns == 0 && table.values.empty()) {
                continue;
            }
            throw InputError(where + ": not a number");
        }
        if (row.size() > 2) {
            throw InputError(where + ": expected one or two columns");
        }
        if (columns == 0) {
            columns = row.size();
        } else if (row.size() != columns) {
            throw InputError(where + ": inconsistent column count");
        }
        if (columns == 2) {
            table.radii.push_back(row[0]);
        }
        table.values.push_back(row.back());
    }
    return table;
}

std::vector<double> samples_on_grid(const SampleTable& table, const AnnulusGeometry& geom,
                                    std::size_t count) {
    if (table.radii.empty()) {
        if (table.values.size() != count) {
            throw InputError("samples: expected " + std::to_string(count) + " values, got " +
                             std::to_string(table.values.size()));
        }
        return table.values;
    }
    const double tol = 1e-12 * geom.b;
    if (std::abs(table.radii.front() - geom.a) > tol || std::abs(table.radii.back() - geom.b) > tol) {
        throw InputError("samples: radius column must span [a, b]");
    }
    return resample_uniform(table.radii, table.values, count);
}

}  // namespace radeuler
