#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "radeuler/eos.hpp"
#include "radeuler/geometry.hpp"

namespace radeuler {

/// Self-adjoint two-point boundary value problem
///
///     alpha w - (beta w_x)_x = rhs,   w(0) = w(M) = 0,
///
/// sampled at the grid nodes. For the radiative flux, w = r^2 q,
/// alpha = 1/(r^4 rho), beta = rho.
struct EllipticProblem {
    std::vector<double> alpha;
    std::vector<double> beta;
    std::vector<double> rhs;
};

/// Tridiagonal matrix over the interior unknowns w_1 .. w_{n-1}.
/// lower[0] and upper[size-1] are zero.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;

    std::size_t size() const { return diag.size(); }
};

/// Three-point stencil with half-node beta by arithmetic mean; Dirichlet
/// rows eliminated. Throws DomainError on non-positive coefficients.
Tridiagonal assemble(const EllipticProblem& problem, double dx);

/// Thomas algorithm. A non-positive pivot means the matrix is not SPD and
/// raises NumericalError naming the row.
std::vector<double> thomas_solve(const Tridiagonal& m, std::span<const double> rhs);

/// Returns w on all nodes, including the zero boundary values.
std::vector<double> solve_elliptic(const EllipticProblem& problem, double dx);

/// Max-norm residual of the discrete equation at interior nodes.
double elliptic_residual(const EllipticProblem& problem, std::span<const double> w, double dx);

/// Discrete (beta w_x)_x with the same half-node averaging as assemble();
/// boundary entries are zero.
std::vector<double> flux_divergence(std::span<const double> beta, std::span<const double> w,
                                    double dx);

struct RadiativeFlux {
    std::vector<double> q;  ///< radiative flux, zero at both ends
    std::vector<double> w;  ///< r^2 q
};

/// Coefficients and source of the radiative flux problem at a frozen state.
/// `coupling` scales the source (0 disables radiation).
EllipticProblem radiative_problem(std::span<const double> P, std::span<const double> s,
                                  std::span<const double> rho, std::span<const double> theta,
                                  std::span<const double> r, const MassGrid& grid,
                                  const GasParams& gas, double coupling = 1.0);

RadiativeFlux solve_radiative_flux(std::span<const double> P, std::span<const double> s,
                                   std::span<const double> rho, std::span<const double> theta,
                                   std::span<const double> r, const MassGrid& grid,
                                   const GasParams& gas, double coupling = 1.0);

/// Max-norm residual of -r^2 rho [rho (r^2 q)_x]_x + q + 4 r^2 theta^3/(cv+1) (P_x + P s_x)
/// over interior nodes, divided by the max norm of the source term (or 1 if it vanishes).
double radiative_residual(std::span<const double> P, std::span<const double> s,
                          std::span<const double> rho, std::span<const double> theta,
                          std::span<const double> r, std::span<const double> q,
                          const MassGrid& grid, const GasParams& gas, double coupling = 1.0);

}  // namespace radeuler
