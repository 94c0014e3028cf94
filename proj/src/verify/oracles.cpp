#include "radeuler/verify/oracles.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace radeuler::verify {

std::vector<double> dense_solve(const Tridiagonal& m, std::span<const double> rhs) {
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd b(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        A(i, i) = m.diag[i];
        if (i > 0) {
            A(i, i - 1) = m.lower[i];
        }
        if (i + 1 < n) {
            A(i, i + 1) = m.upper[i];
        }
        b(i) = rhs[i];
    }
    const Eigen::VectorXd x = A.partialPivLu().solve(b);
    return {x.data(), x.data() + n};
}

std::vector<std::vector<double>> derivative_matrix(std::size_t nodes, double dx) {
    std::vector<std::vector<double>> D(nodes, std::vector<double>(nodes, 0.0));
    const double h = 1.0 / (2.0 * dx);
    D[0][0] = -3.0 * h;
    D[0][1] = 4.0 * h;
    D[0][2] = -1.0 * h;
    for (std::size_t i = 1; i + 1 < nodes; ++i) {
        D[i][i - 1] = -h;
        D[i][i + 1] = h;
    }
    const std::size_t e = nodes - 1;
    D[e][e] = 3.0 * h;
    D[e][e - 1] = -4.0 * h;
    D[e][e - 2] = 1.0 * h;
    return D;
}

AcousticMode lowest_acoustic_mode(std::span<const double> r0, std::span<const double> rho0,
                                  std::span<const double> P0, double dx, const GasParams& gas) {
    const std::size_t nodes = r0.size();
    const std::size_t nu = nodes - 2;
    const auto size = static_cast<Eigen::Index>(nodes + nu);
    const auto D = derivative_matrix(nodes, dx);
    const double kp = (gas.cv + 1.0) / gas.cv;

    // Rows 0..nodes-1: p; rows nodes..: interior u.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(size, size);
    for (std::size_t i = 0; i < nodes; ++i) {
        const double c = -kp * P0[i] * rho0[i];
        for (std::size_t j = 1; j + 1 < nodes; ++j) {
            A(i, nodes + j - 1) = c * D[i][j] * r0[j] * r0[j];
        }
    }
    for (std::size_t j = 1; j + 1 < nodes; ++j) {
        for (std::size_t k = 0; k < nodes; ++k) {
            A(nodes + j - 1, k) = -r0[j] * r0[j] * D[j][k];
        }
    }

    Eigen::EigenSolver<Eigen::MatrixXd> right(A);
    const auto& lam = right.eigenvalues();
    AcousticMode mode;
    double best = std::numeric_limits<double>::infinity();
    Eigen::Index best_index = -1;
    for (Eigen::Index k = 0; k < lam.size(); ++k) {
        mode.spectral_radius = std::max(mode.spectral_radius, std::abs(lam(k)));
        if (!(lam(k).imag() > 1e-8) || lam(k).imag() >= best) {
            continue;
        }
        const Eigen::VectorXcd v = right.eigenvectors().col(k);
        Eigen::Index arg = 0;
        v.segment(nodes, nu).cwiseAbs().maxCoeff(&arg);
        const std::complex<double> phase = std::conj(v(nodes + arg)) / std::abs(v(nodes + arg));
        bool one_signed = true;
        for (std::size_t j = 0; j < nu; ++j) {
            if ((v(nodes + j) * phase).real() < -1e-8 * std::abs(v(nodes + arg))) {
                one_signed = false;
                break;
            }
        }
        if (one_signed) {
            best = lam(k).imag();
            best_index = k;
        }
    }
    if (best_index < 0) {
        throw std::runtime_error("lowest_acoustic_mode: no smooth oscillatory mode found");
    }
    mode.omega = best;
    const Eigen::VectorXcd v = right.eigenvectors().col(best_index);
    mode.right.assign(v.data(), v.data() + size);

    // Left eigenvector: eigenvector of A^T for the conjugate-matched eigenvalue.
    Eigen::EigenSolver<Eigen::MatrixXd> left(A.transpose());
    Eigen::Index li = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < left.eigenvalues().size(); ++k) {
        const double d = std::abs(left.eigenvalues()(k) - lam(best_index));
        if (d < dist) {
            dist = d;
            li = k;
        }
    }
    const Eigen::VectorXcd w = left.eigenvectors().col(li);
    mode.left.assign(w.data(), w.data() + size);
    return mode;
}

}  // namespace radeuler::verify
