#pragma once

#include <span>
#include <vector>

/// Finite-difference and quadrature primitives on a uniform nodal grid.
///
/// All fields are sampled at nodes 0..n with spacing dx. First and second
/// derivatives are second-order everywhere: central in the interior and
/// one-sided at the two end nodes.
namespace radeuler::stencil {

using Field = std::vector<double>;

Field derivative(std::span<const double> f, double dx);
Field second_derivative(std::span<const double> f, double dx);

/// Composite trapezoid rule over the whole grid.
double trapezoid(std::span<const double> f, double dx);

/// Running trapezoid integral, F[0] = 0.
Field cumulative_trapezoid(std::span<const double> f, double dx);

/// sqrt(trapezoid(f^2)).
double l2_norm(std::span<const double> f, double dx);

double max_abs(std::span<const double> f);

// Pointwise helpers.
Field product(std::span<const double> a, std::span<const double> b);
Field axpy(double alpha, std::span<const double> x, std::span<const double> y);  // y + alpha x
Field scaled(double alpha, std::span<const double> x);
Field difference(std::span<const double> a, std::span<const double> b);

}  // namespace radeuler::stencil
