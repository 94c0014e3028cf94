#pragma once

#include <complex>
#include <span>
#include <vector>

#include "radeuler/eos.hpp"
#include "radeuler/radiation.hpp"

namespace radeuler::verify {

/// Dense LU solve of the tridiagonal system; reference for the Thomas solver.
std::vector<double> dense_solve(const Tridiagonal& m, std::span<const double> rhs);

/// Dense matrix of the first-derivative stencil (central interior,
/// second-order one-sided ends), built entry by entry.
std::vector<std::vector<double>> derivative_matrix(std::size_t nodes, double dx);

/// Lowest physical mode of the frozen-coefficient acoustic system
///     p_t = -((cv+1)/cv) P0 rho0 D(r0^2 u),   u_t = -r0^2 D(p),   u = 0 at the ends,
/// on unknowns (p_0..p_n, u_1..u_{n-1}).
struct AcousticMode {
    double omega = 0.0;        ///< angular frequency
    double spectral_radius = 0.0;
    std::vector<std::complex<double>> left;   ///< left eigenvector, same layout as the unknowns
    std::vector<std::complex<double>> right;  ///< right eigenvector
};

/// Among eigenvalues with positive imaginary part, picks the smallest one whose
/// velocity component keeps one sign, which rejects the grid-scale modes of the
/// central difference.
AcousticMode lowest_acoustic_mode(std::span<const double> r0, std::span<const double> rho0,
                                  std::span<const double> P0, double dx, const GasParams& gas);

}  // namespace radeuler::verify
