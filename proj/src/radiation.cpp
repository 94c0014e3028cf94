#include "radeuler/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "radeuler/errors.hpp"
#include "radeuler/stencil.hpp"

namespace radeuler {

namespace {

void check_sizes(const EllipticProblem& p) {
    if (p.alpha.size() != p.beta.size() || p.alpha.size() != p.rhs.size() || p.alpha.size() < 3) {
        throw InputError("elliptic problem: coefficient fields must share a length >= 3");
    }
}

}  // namespace

Tridiagonal assemble(const EllipticProblem& problem, double dx) {
    check_sizes(problem);
    const std::size_t nodes = problem.alpha.size();
    for (std::size_t i = 0; i < nodes; ++i) {
        if (!(problem.alpha[i] > 0.0) || !(problem.beta[i] > 0.0)) {
            throw DomainError("assemble: non-positive coefficient at node " + std::to_string(i));
        }
    }
    const std::size_t m = nodes - 2;
    const double inv = 1.0 / (dx * dx);
    Tridiagonal t{std::vector<double>(m, 0.0), std::vector<double>(m), std::vector<double>(m, 0.0)};
    for (std::size_t k = 0; k < m; ++k) {
        const std::size_t i = k + 1;
        const double b_lo = 0.5 * (problem.beta[i - 1] + problem.beta[i]) * inv;
        const double b_hi = 0.5 * (problem.beta[i] + problem.beta[i + 1]) * inv;
        t.diag[k] = problem.alpha[i] + b_lo + b_hi;
        if (k > 0) {
            t.lower[k] = -b_lo;
        }
        if (k + 1 < m) {
            t.upper[k] = -b_hi;
        }
    }
    return t;
}

std::vector<double> thomas_solve(const Tridiagonal& m, std::span<const double> rhs) {
    const std::size_t n = m.size();
    if (rhs.size() != n || n == 0) {
        throw InputError("thomas_solve: right-hand side length mismatch");
    }
    std::vector<double> c(n);
    std::vector<double> d(n);
    double pivot = m.diag[0];
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            pivot = m.diag[i] - m.lower[i] * c[i - 1];
        }
        if (!(pivot > 0.0) || !std::isfinite(pivot)) {
            std::ostringstream os;
            os << "thomas_solve: pivot " << pivot << " at row " << i
               << " (diag " << m.diag[i] << ", lower " << m.lower[i]
               << "); matrix is not symmetric positive definite";
            throw NumericalError(os.str());
        }
        c[i] = m.upper[i] / pivot;
        d[i] = (rhs[i] - (i > 0 ? m.lower[i] * d[i - 1] : 0.0)) / pivot;
    }
    std::vector<double> x(n);
    x[n - 1] = d[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    return x;
}

std::vector<double> solve_elliptic(const EllipticProblem& problem, double dx) {
    const auto matrix = assemble(problem, dx);
    const std::span<const double> interior(problem.rhs.data() + 1, problem.rhs.size() - 2);
    const auto inner = thomas_solve(matrix, interior);
    std::vector<double> w(problem.rhs.size(), 0.0);
    std::copy(inner.begin(), inner.end(), w.begin() + 1);
    return w;
}

std::vector<double> flux_divergence(std::span<const double> beta, std::span<const double> w,
                                    double dx) {
    const std::size_t n = w.size();
    std::vector<double> out(n, 0.0);
    const double inv = 1.0 / (dx * dx);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double b_lo = 0.5 * (beta[i - 1] + beta[i]);
        const double b_hi = 0.5 * (beta[i] + beta[i + 1]);
        out[i] = (b_hi * (w[i + 1] - w[i]) - b_lo * (w[i] - w[i - 1])) * inv;
    }
    return out;
}

double elliptic_residual(const EllipticProblem& problem, std::span<const double> w, double dx) {
    check_sizes(problem);
    const auto div = flux_divergence(problem.beta, w, dx);
    double res = 0.0;
    for (std::size_t i = 1; i + 1 < w.size(); ++i) {
        res = std::max(res, std::abs(problem.alpha[i] * w[i] - div[i] - problem.rhs[i]));
    }
    return res;
}

EllipticProblem radiative_problem(std::span<const double> P, std::span<const double> s,
                                  std::span<const double> rho, std::span<const double> theta,
                                  std::span<const double> r, const MassGrid& grid,
                                  const GasParams& gas, double coupling) {
    const std::size_t n = grid.num_nodes();
    if (P.size() != n || s.size() != n || rho.size() != n || theta.size() != n || r.size() != n) {
        throw InputError("radiative_problem: field lengths do not match the grid");
    }
    const double dx = grid.dx();
    const auto Px = stencil::derivative(P, dx);
    const auto sx = stencil::derivative(s, dx);
    EllipticProblem prob{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
    const double k = 4.0 * coupling / (gas.cv + 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(rho[i] > 0.0) || !(theta[i] > 0.0)) {
            throw DomainError("radiative_problem: non-positive density or temperature at node " +
                              std::to_string(i));
        }
        const double r2 = r[i] * r[i];
        prob.alpha[i] = 1.0 / (r2 * r2 * rho[i]);
        prob.beta[i] = rho[i];
        const double t3 = theta[i] * theta[i] * theta[i];
        prob.rhs[i] = -k * t3 / rho[i] * (Px[i] + P[i] * sx[i]);
    }
    return prob;
}

RadiativeFlux solve_radiative_flux(std::span<const double> P, std::span<const double> s,
                                   std::span<const double> rho, std::span<const double> theta,
                                   std::span<const double> r, const MassGrid& grid,
                                   const GasParams& gas, double coupling) {
    require_increasing(r, "solve_radiative_flux");
    const auto prob = radiative_problem(P, s, rho, theta, r, grid, gas, coupling);
    RadiativeFlux out;
    if (coupling == 0.0) {
        out.w.assign(P.size(), 0.0);
        out.q.assign(P.size(), 0.0);
        return out;
    }
    out.w = solve_elliptic(prob, grid.dx());
    out.q.resize(out.w.size());
    for (std::size_t i = 0; i < out.w.size(); ++i) {
        out.q[i] = out.w[i] / (r[i] * r[i]);
    }
    out.q.front() = 0.0;
    out.q.back() = 0.0;
    return out;
}

double radiative_residual(std::span<const double> P, std::span<const double> s,
                          std::span<const double> rho, std::span<const double> theta,
                          std::span<const double> r, std::span<const double> q,
                          const MassGrid& grid, const GasParams& gas, double coupling) {
    const std::size_t n = grid.num_nodes();
    const double dx = grid.dx();
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = r[i] * r[i] * q[i];
    }
    const auto div = flux_divergence(rho, w, dx);
    const auto Px = stencil::derivative(P, dx);
    const auto sx = stencil::derivative(s, dx);
    const double k = 4.0 * coupling / (gas.cv + 1.0);
    double res = 0.0;
    double scale = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double r2 = r[i] * r[i];
        const double source = k * r2 * theta[i] * theta[i] * theta[i] * (Px[i] + P[i] * sx[i]);
        res = std::max(res, std::abs(-r2 * rho[i] * div[i] + q[i] + source));
        scale = std::max(scale, std::abs(source));
    }
    return scale > 0.0 ? res / scale : res;
}

}  // namespace radeuler
