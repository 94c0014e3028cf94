#include "radeuler/stencil.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "radeuler/errors.hpp"

namespace radeuler::stencil {

Field derivative(std::span<const double> f, double dx) {
    const std::size_t n = f.size();
    if (n < 3) {
        throw InputError("derivative: need at least 3 nodes");
    }
    Field d(n);
    const double inv2 = 0.5 / dx;
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) * inv2;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        d[i] = (f[i + 1] - f[i - 1]) * inv2;
    }
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) * inv2;
    return d;
}

Field second_derivative(std::span<const double> f, double dx) {
    const std::size_t n = f.size();
    if (n < 4) {
        throw InputError("second_derivative: need at least 4 nodes");
    }
    Field d(n);
    const double inv = 1.0 / (dx * dx);
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) * inv;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        d[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) * inv;
    }
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) * inv;
    return d;
}

double trapezoid(std::span<const double> f, double dx) {
    if (f.size() < 2) {
        return 0.0;
    }
    double sum = 0.5 * (f.front() + f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        sum += f[i];
    }
    return sum * dx;
}

Field cumulative_trapezoid(std::span<const double> f, double dx) {
    Field out(f.size(), 0.0);
    for (std::size_t i = 1; i < f.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * dx * (f[i - 1] + f[i]);
    }
    return out;
}

double l2_norm(std::span<const double> f, double dx) {
    if (f.size() < 2) {
        return 0.0;
    }
    double sum = 0.5 * (f.front() * f.front() + f.back() * f.back());
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
        sum += f[i] * f[i];
    }
    return std::sqrt(sum * dx);
}

double max_abs(std::span<const double> f) {
    double m = 0.0;
    for (double v : f) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

Field product(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    Field out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] * b[i];
    }
    return out;
}

Field axpy(double alpha, std::span<const double> x, std::span<const double> y) {
    assert(x.size() == y.size());
    Field out(y.begin(), y.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] += alpha * x[i];
    }
    return out;
}

Field scaled(double alpha, std::span<const double> x) {
    Field out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = alpha * x[i];
    }
    return out;
}

Field difference(std::span<const double> a, std::span<const double> b) {
    return axpy(-1.0, b, a);
}

}  // namespace radeuler::stencil
