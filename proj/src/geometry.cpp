#include "radeuler/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "radeuler/errors.hpp"
#include "radeuler/stencil.hpp"

namespace radeuler {

void AnnulusGeometry::validate() const {
    if (!(a > 0.0) || !(b > a) || !std::isfinite(b)) {
        throw DomainError("geometry: need 0 < a < b < inf, got a = " + std::to_string(a) +
                          ", b = " + std::to_string(b));
    }
}

MassTable::MassTable(std::vector<double> radii, std::vector<double> integrand,
                     std::vector<double> mass)
    : radii_(std::move(radii)), integrand_(std::move(integrand)), mass_(std::move(mass)) {}

double MassTable::mass_at(double z) const {
    if (z <= radii_.front()) {
        return 0.0;
    }
    if (z >= radii_.back()) {
        return mass_.back();
    }
    const auto it = std::upper_bound(radii_.begin(), radii_.end(), z);
    const std::size_t j = static_cast<std::size_t>(it - radii_.begin()) - 1;
    const double h = radii_[j + 1] - radii_[j];
    const double t = (z - radii_[j]) / h;
    const double f0 = integrand_[j];
    const double f1 = integrand_[j + 1];
    return mass_[j] + h * (f0 * t + 0.5 * (f1 - f0) * t * t);
}

MassGrid::MassGrid(AnnulusGeometry g, std::size_t cells, double mass)
    : geom(g), n_cells(cells), total_mass(mass) {
    validate();
}

double MassGrid::node(std::size_t i) const {
    if (i == n_cells) {
        return total_mass;
    }
    return static_cast<double>(i) * total_mass / static_cast<double>(n_cells);
}

std::vector<double> MassGrid::nodes() const {
    std::vector<double> x(num_nodes());
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = node(i);
    }
    return x;
}

void MassGrid::validate() const {
    geom.validate();
    if (n_cells < 4) {
        throw InputError("grid: need at least 4 cells, got " + std::to_string(n_cells));
    }
    if (!(total_mass > 0.0) || !std::isfinite(total_mass)) {
        throw DomainError("grid: total mass must be positive");
    }
}

MassTable mass_coordinate(std::span<const double> rho0, const AnnulusGeometry& geom) {
    geom.validate();
    if (rho0.size() < 8) {
        throw InputError("mass_coordinate: need at least 8 density samples, got " +
                         std::to_string(rho0.size()));
    }
    const std::size_t n = rho0.size();
    const double dr = (geom.b - geom.a) / static_cast<double>(n - 1);
    std::vector<double> radii(n);
    std::vector<double> integrand(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (!(rho0[j] > 0.0)) {
            throw DomainError("mass_coordinate: density sample " + std::to_string(j) +
                              " is not positive");
        }
        radii[j] = (j + 1 == n) ? geom.b : geom.a + static_cast<double>(j) * dr;
        integrand[j] = radii[j] * radii[j] * rho0[j];
    }
    auto mass = stencil::cumulative_trapezoid(integrand, dr);
    return MassTable(std::move(radii), std::move(integrand), std::move(mass));
}

double r0_from_x(double x, const MassTable& table) {
    const double M = table.total_mass();
    if (!(x >= 0.0) || !(x <= M)) {
        throw DomainError("r0_from_x: x = " + std::to_string(x) + " outside [0, " +
                          std::to_string(M) + "]");
    }
    const auto& radii = table.radii_;
    const auto& mass = table.mass_;
    const auto& f = table.integrand_;
    if (x == 0.0) {
        return radii.front();
    }
    if (x == M) {
        return radii.back();
    }
    // Bisection over table cells: mass is strictly increasing.
    std::size_t lo = 0;
    std::size_t hi = mass.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (mass[mid] <= x) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double h = radii[hi] - radii[lo];
    const double f0 = f[lo];
    const double f1 = f[hi];
    const double target = (x - mass[lo]) / h;
    // Solve f0 t + (f1 - f0) t^2 / 2 = target on [0, 1].
    double t_lo = 0.0;
    double t_hi = 1.0;
    double t = (f0 + f1 > 0.0) ? std::clamp(2.0 * target / (f0 + f1), 0.0, 1.0) : 0.5;
    const double tol = 1e-12 * table.outer_radius() / h;
    for (int iter = 0; iter < 100; ++iter) {
        const double g = f0 * t + 0.5 * (f1 - f0) * t * t - target;
        if (g > 0.0) {
            t_hi = t;
        } else {
            t_lo = t;
        }
        const double dg = f0 + (f1 - f0) * t;
        double next = t - g / dg;
        if (!(next > t_lo && next < t_hi)) {
            next = 0.5 * (t_lo + t_hi);
        }
        const double step = std::abs(next - t);
        t = next;
        if (step <= tol * 1e-3 || t_hi - t_lo <= tol * 1e-3) {
            break;
        }
    }
    return radii[lo] + t * h;
}

std::vector<double> reconstruct_r(std::span<const double> rho, const MassGrid& grid) {
    if (rho.size() != grid.num_nodes()) {
        throw InputError("reconstruct_r: density length does not match grid");
    }
    std::vector<double> inv(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        if (!(rho[i] > 0.0)) {
            throw DomainError("reconstruct_r: density not positive at node " + std::to_string(i));
        }
        inv[i] = 1.0 / rho[i];
    }
    const auto vol = stencil::cumulative_trapezoid(inv, grid.dx());
    const double a3 = grid.geom.a * grid.geom.a * grid.geom.a;
    std::vector<double> r(rho.size());
    r[0] = grid.geom.a;
    for (std::size_t i = 1; i < r.size(); ++i) {
        r[i] = std::cbrt(a3 + 3.0 * vol[i]);
    }
    return r;
}

std::vector<double> advance_r(std::span<const double> r, std::span<const double> u, double dt) {
    return stencil::axpy(dt, u, r);
}

void require_increasing(std::span<const double> r, const char* what) {
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (!(r[i] > r[i - 1])) {
            throw DomainError(std::string(what) + ": radius not strictly increasing at node " +
                              std::to_string(i) + " (mesh tangling)");
        }
    }
}

std::vector<double> density_from_r(std::span<const double> r, const MassGrid& grid) {
    if (r.size() != grid.num_nodes()) {
        throw InputError("density_from_r: radius length does not match grid");
    }
    require_increasing(r, "density_from_r");
    const auto rx = stencil::derivative(r, grid.dx());
    std::vector<double> rho(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (!(rx[i] > 0.0)) {
            throw DomainError("density_from_r: non-positive r_x at node " + std::to_string(i));
        }
        rho[i] = 1.0 / (r[i] * r[i] * rx[i]);
    }
    return rho;
}

double total_volume(std::span<const double> rho, const MassGrid& grid) {
    std::vector<double> inv(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
        inv[i] = 1.0 / rho[i];
    }
    return stencil::trapezoid(inv, grid.dx());
}

double interpolate_linear(std::span<const double> xs, std::span<const double> ys, double x) {
    if (x <= xs.front()) {
        return ys.front();
    }
    if (x >= xs.back()) {
        return ys.back();
    }
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - xs.begin()) - 1;
    const double t = (x - xs[j]) / (xs[j + 1] - xs[j]);
    return (1.0 - t) * ys[j] + t * ys[j + 1];
}

std::vector<double> resample_uniform(std::span<const double> radii, std::span<const double> values,
                                     std::size_t count) {
    if (radii.size() != values.size() || radii.size() < 2 || count < 2) {
        throw InputError("resample_uniform: need matching columns with at least 2 rows");
    }
    require_increasing(radii, "resample_uniform");
    std::vector<double> out(count);
    const double lo = radii.front();
    const double hi = radii.back();
    for (std::size_t j = 0; j < count; ++j) {
        const double z = lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(count - 1);
        out[j] = interpolate_linear(radii, values, z);
    }
    return out;
}

}  // namespace radeuler
