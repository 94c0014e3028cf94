#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace radeuler {

/// Concentric annulus a < |x| < b.
struct AnnulusGeometry {
    double a = 1.0;
    double b = 2.0;

    void validate() const;
    /// Volume per unit solid angle, (b^3 - a^3) / 3.
    double reduced_volume() const { return (b * b * b - a * a * a) / 3.0; }

    bool operator==(const AnnulusGeometry&) const = default;
};

/// Tabulated cumulative mass h(z) = int_a^z y^2 rho0(y) dy on a uniform
/// radius grid. Between samples the density is taken piecewise linear, so
/// h is piecewise quadratic and agrees with the composite trapezoid rule at
/// the samples.
class MassTable {
public:
    MassTable(std::vector<double> radii, std::vector<double> integrand, std::vector<double> mass);

    double total_mass() const { return mass_.back(); }
    double inner_radius() const { return radii_.front(); }
    double outer_radius() const { return radii_.back(); }

    /// h(z) for z in [a, b].
    double mass_at(double z) const;

    std::span<const double> radii() const { return radii_; }
    std::span<const double> masses() const { return mass_; }

private:
    friend double r0_from_x(double x, const MassTable& table);

    std::vector<double> radii_;
    std::vector<double> integrand_;  // y^2 rho0(y)
    std::vector<double> mass_;
};

/// Uniform discretization of the Lagrangian mass interval [0, M].
struct MassGrid {
    AnnulusGeometry geom;
    std::size_t n_cells = 0;
    double total_mass = 0.0;

    MassGrid() = default;
    MassGrid(AnnulusGeometry g, std::size_t cells, double mass);

    std::size_t num_nodes() const { return n_cells + 1; }
    double dx() const { return total_mass / static_cast<double>(n_cells); }
    double node(std::size_t i) const;
    std::vector<double> nodes() const;
    void validate() const;
};

/// Builds h from density samples on the uniform grid a = y_0 < ... < y_N = b.
MassTable mass_coordinate(std::span<const double> rho0, const AnnulusGeometry& geom);

/// r0(x) = h^{-1}(x): bracketing search over the table, then safeguarded
/// Newton inside the bracketing cell (tolerance 1e-12 * b).
double r0_from_x(double x, const MassTable& table);

/// r(x) = (a^3 + 3 int_0^x rho^{-1})^{1/3}, trapezoid quadrature.
std::vector<double> reconstruct_r(std::span<const double> rho, const MassGrid& grid);

/// Forward stage r + dt u. The time integrator combines stages.
std::vector<double> advance_r(std::span<const double> r, std::span<const double> u, double dt);

/// rho = 1 / (r^2 r_x). Throws DomainError when r is not strictly increasing.
std::vector<double> density_from_r(std::span<const double> r, const MassGrid& grid);

/// int_0^M rho^{-1} dx, which equals (b^3 - a^3)/3 for a consistent state.
double total_volume(std::span<const double> rho, const MassGrid& grid);

/// Throws DomainError (mesh tangling) unless r is strictly increasing.
void require_increasing(std::span<const double> r, const char* what);

/// Linear interpolation of (radii, values) samples onto `count` uniformly
/// spaced radii spanning [radii.front(), radii.back()].
std::vector<double> resample_uniform(std::span<const double> radii, std::span<const double> values,
                                     std::size_t count);

/// Linear interpolation of tabulated (xs, ys) at a point; xs strictly increasing.
double interpolate_linear(std::span<const double> xs, std::span<const double> ys, double x);

}  // namespace radeuler
