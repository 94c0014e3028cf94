#include "radeuler/initial_data.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "radeuler/errors.hpp"
#include "radeuler/radiation.hpp"
#include "radeuler/stencil.hpp"

namespace radeuler {

namespace {

// Truncated Taylor series in t of a nodal field: jet[k] = (d^k f/dt^k) / k!.
using Jet = std::vector<Field>;

Field zeros(std::size_t n) { return Field(n, 0.0); }

Jet jet_mul(const Jet& a, const Jet& b) {
    const std::size_t len = std::min(a.size(), b.size());
    const std::size_t n = a[0].size();
    Jet c(len, zeros(n));
    for (std::size_t k = 0; k < len; ++k) {
        for (std::size_t i = 0; i <= k; ++i) {
            for (std::size_t p = 0; p < n; ++p) {
                c[k][p] += a[i][p] * b[k - i][p];
            }
        }
    }
    return c;
}

Jet jet_div(const Jet& a, const Jet& b) {
    const std::size_t len = std::min(a.size(), b.size());
    const std::size_t n = a[0].size();
    Jet c(len, zeros(n));
    for (std::size_t k = 0; k < len; ++k) {
        for (std::size_t p = 0; p < n; ++p) {
            double acc = a[k][p];
            for (std::size_t i = 1; i <= k; ++i) {
                acc -= b[i][p] * c[k - i][p];
            }
            c[k][p] = acc / b[0][p];
        }
    }
    return c;
}

Jet jet_exp(const Jet& f) {
    const std::size_t n = f[0].size();
    Jet e(f.size(), zeros(n));
    for (std::size_t p = 0; p < n; ++p) {
        e[0][p] = std::exp(f[0][p]);
    }
    for (std::size_t k = 1; k < f.size(); ++k) {
        for (std::size_t p = 0; p < n; ++p) {
            double acc = 0.0;
            for (std::size_t i = 1; i <= k; ++i) {
                acc += static_cast<double>(i) * f[i][p] * e[k - i][p];
            }
            e[k][p] = acc / static_cast<double>(k);
        }
    }
    return e;
}

Jet jet_log(const Jet& f) {
    const std::size_t n = f[0].size();
    Jet l(f.size(), zeros(n));
    for (std::size_t p = 0; p < n; ++p) {
        l[0][p] = std::log(f[0][p]);
    }
    for (std::size_t k = 1; k < f.size(); ++k) {
        for (std::size_t p = 0; p < n; ++p) {
            double acc = 0.0;
            for (std::size_t i = 1; i < k; ++i) {
                acc += static_cast<double>(i) * l[i][p] * f[k - i][p];
            }
            l[k][p] = (f[k][p] - acc / static_cast<double>(k)) / f[0][p];
        }
    }
    return l;
}

Jet jet_lincomb(double a, const Jet& x, double b, const Jet& y, double shift = 0.0) {
    Jet out(x.size(), zeros(x[0].size()));
    for (std::size_t k = 0; k < x.size(); ++k) {
        for (std::size_t p = 0; p < x[k].size(); ++p) {
            out[k][p] = a * x[k][p] + b * y[k][p] + (k == 0 ? shift : 0.0);
        }
    }
    return out;
}

Jet jet_derivative(const Jet& f, double dx) {
    Jet out;
    out.reserve(f.size());
    for (const auto& c : f) {
        out.push_back(stencil::derivative(c, dx));
    }
    return out;
}

Jet jet_constant(double value, std::size_t len, std::size_t n) {
    Jet out(len, zeros(n));
    out[0].assign(n, value);
    return out;
}

Jet head(const Jet& f, std::size_t len) { return Jet(f.begin(), f.begin() + len); }

double factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) {
        f *= i;
    }
    return f;
}

double h2_norm(const Field& f, double dx) {
    const auto d1 = stencil::derivative(f, dx);
    const auto d2 = stencil::second_derivative(f, dx);
    const double a = stencil::l2_norm(f, dx);
    const double b = stencil::l2_norm(d1, dx);
    const double c = stencil::l2_norm(d2, dx);
    return std::sqrt(a * a + b * b + c * c);
}

}  // namespace

ProfileKind parse_profile(const std::string& name) {
    if (name == "sine-bump") {
        return ProfileKind::SineBump;
    }
    if (name == "compact-bump") {
        return ProfileKind::CompactBump;
    }
    if (name == "custom") {
        return ProfileKind::Custom;
    }
    throw InputError("unknown profile '" + name + "' (expected sine-bump, compact-bump, custom)");
}

std::string to_string(ProfileKind kind) {
    switch (kind) {
        case ProfileKind::SineBump:
            return "sine-bump";
        case ProfileKind::CompactBump:
            return "compact-bump";
        case ProfileKind::Custom:
            return "custom";
    }
    return "unknown";
}

void InitialDataSpec::validate() const {
    if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
        throw DomainError("initial data: epsilon must be >= 0");
    }
    if (flatness_order < 1) {
        throw DomainError("initial data: flatness_order must be >= 1");
    }
    if (profile == ProfileKind::CompactBump) {
        if (!(width > 0.0) || center - width < 0.0 || center + width > 1.0) {
            throw DomainError("initial data: compact bump support must lie inside [0, 1]");
        }
        if (!(sharpness > 0.0)) {
            throw DomainError("initial data: compact bump sharpness must be > 0");
        }
    }
}

double profile_value(const InitialDataSpec& spec, double xi) {
    switch (spec.profile) {
        case ProfileKind::SineBump:
            return std::pow(std::sin(std::numbers::pi * xi), spec.flatness_order);
        case ProfileKind::CompactBump: {
            const double z = (xi - spec.center) / spec.width;
            if (std::abs(z) >= 1.0) {
                return 0.0;
            }
            return std::exp(spec.sharpness * (1.0 - 1.0 / (1.0 - z * z)));
        }
        case ProfileKind::Custom:
            break;
    }
    throw InputError("profile_value: custom profiles are sampled, not analytic");
}

InitialData build_initial_data(const InitialDataSpec& spec, const AnnulusGeometry& geom,
                               std::size_t n_cells, const GasParams& gas) {
    spec.validate();
    geom.validate();
    gas.validate();
    const std::size_t nodes = n_cells + 1;

    // Perturbation shape as a function of radius, per field.
    std::vector<double> custom_radii;
    if (spec.profile == ProfileKind::Custom) {
        for (const auto* f : {&spec.custom_P, &spec.custom_u, &spec.custom_s}) {
            if (f->size() != nodes) {
                throw InputError("initial data: custom samples have length " +
                                 std::to_string(f->size()) + ", grid has " +
                                 std::to_string(nodes) + " nodes");
            }
        }
        custom_radii.resize(nodes);
        for (std::size_t i = 0; i < nodes; ++i) {
            custom_radii[i] = geom.a + (geom.b - geom.a) * static_cast<double>(i) /
                                           static_cast<double>(n_cells);
        }
    }
    auto shape = [&](double radius, int which) {
        const double xi = (radius - geom.a) / (geom.b - geom.a);
        if (spec.profile == ProfileKind::Custom) {
            const auto& f = which == 0 ? spec.custom_P : which == 1 ? spec.custom_u : spec.custom_s;
            return interpolate_linear(custom_radii, f, radius);
        }
        const double w = which == 0 ? spec.weight_P : which == 1 ? spec.weight_u : spec.weight_s;
        return w * profile_value(spec, xi);
    };

    std::vector<double> rho0(kMassTableSamples);
    for (std::size_t j = 0; j < kMassTableSamples; ++j) {
        const double radius =
            j + 1 == kMassTableSamples
                ? geom.b
                : geom.a + (geom.b - geom.a) * static_cast<double>(j) /
                               static_cast<double>(kMassTableSamples - 1);
        const double P = 1.0 + spec.epsilon * shape(radius, 0);
        const double s = 1.0 + spec.epsilon * shape(radius, 2);
        rho0[j] = rho_from_P_s(P, s, gas);
    }
    const auto table = mass_coordinate(rho0, geom);

    InitialData data;
    data.grid = MassGrid(geom, n_cells, table.total_mass());
    data.P.resize(nodes);
    data.u.resize(nodes);
    data.s.resize(nodes);
    data.r.resize(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        const double radius = r0_from_x(data.grid.node(i), table);
        data.r[i] = radius;
        data.P[i] = 1.0 + spec.epsilon * shape(radius, 0);
        data.u[i] = spec.epsilon * shape(radius, 1);
        data.s[i] = 1.0 + spec.epsilon * shape(radius, 2);
    }
    data.r.front() = geom.a;
    data.r.back() = geom.b;
    data.u.front() = 0.0;
    data.u.back() = 0.0;

    const double dx = data.grid.dx();
    Field dP(nodes);
    Field ds(nodes);
    for (std::size_t i = 0; i < nodes; ++i) {
        dP[i] = data.P[i] - 1.0;
        ds[i] = data.s[i] - 1.0;
    }
    const double a = h2_norm(dP, dx);
    const double b = h2_norm(data.u, dx);
    const double c = h2_norm(ds, dx);
    data.perturbation_h2 = std::sqrt(a * a + b * b + c * c);
    return data;
}

TimeDerivatives semi_discrete_derivatives(const Field& P0, const Field& u0, const Field& s0,
                                          const Field& r0, const MassGrid& grid,
                                          const GasParams& gas, int order,
                                          double radiation_coupling) {
    if (order < 0) {
        throw UnsupportedOrderError("semi_discrete_derivatives: order must be >= 0");
    }
    const std::size_t n = grid.num_nodes();
    const std::size_t K = static_cast<std::size_t>(order);
    const double dx = grid.dx();
    const double kp = gas.pressure_factor();
    const double kq = 1.0 / gas.cv;
    const double expo = gas.cv / (gas.cv + 1.0);
    const double c_src = 4.0 * radiation_coupling / (gas.cv + 1.0);

    Jet P{P0}, u{u0}, s{s0}, r{r0};
    Jet w, q, rho, theta;

    for (std::size_t k = 0; k <= K; ++k) {
        const std::size_t len = k + 1;
        // Thermodynamics: rho = (P/A)^{cv/(cv+1)} exp(-s/(cv+1)), theta = P / rho.
        const Jet lnP = jet_log(P);
        rho = jet_exp(jet_lincomb(expo, lnP, -1.0 / (gas.cv + 1.0), s, -expo * std::log(gas.A)));
        theta = jet_div(P, rho);

        const Jet r2 = jet_mul(r, r);
        const Jet alpha = jet_div(jet_constant(1.0, len, n), jet_mul(jet_mul(r2, r2), rho));
        const Jet& beta = rho;
        const Jet Px = jet_derivative(P, dx);
        const Jet sx = jet_derivative(s, dx);
        const Jet t3 = jet_mul(jet_mul(theta, theta), theta);
        const Jet src = jet_lincomb(1.0, Px, 1.0, jet_mul(P, sx));
        const Jet g = jet_div(jet_mul(t3, src), rho);

        // k-th flux coefficient from the time-differentiated elliptic equation.
        Field rhs(n);
        for (std::size_t p = 0; p < n; ++p) {
            rhs[p] = -c_src * g[k][p];
        }
        for (std::size_t i = 1; i <= k; ++i) {
            const auto div = flux_divergence(beta[i], w[k - i], dx);
            for (std::size_t p = 0; p < n; ++p) {
                rhs[p] -= alpha[i][p] * w[k - i][p] - div[p];
            }
        }
        if (radiation_coupling == 0.0) {
            w.push_back(zeros(n));
        } else {
            w.push_back(solve_elliptic(EllipticProblem{alpha[0], beta[0], rhs}, dx));
        }
        q = jet_div(w, r2);
        for (auto& c : q) {
            c.front() = 0.0;
            c.back() = 0.0;
        }
        if (k == K) {
            break;
        }

        const Jet Du = jet_derivative(jet_mul(r2, u), dx);
        const Jet Dw = jet_derivative(w, dx);
        const Jet Pt = jet_lincomb(-kp, jet_mul(jet_mul(P, rho), Du), -kq, jet_mul(rho, Dw));
        Jet ut = jet_mul(r2, Px);
        const Jet st = jet_div(Dw, theta);
        const double next = 1.0 / static_cast<double>(k + 1);
        Field Pn(n), un(n), sn(n), rn(n);
        for (std::size_t p = 0; p < n; ++p) {
            Pn[p] = Pt[k][p] * next;
            un[p] = -ut[k][p] * next;
            sn[p] = -st[k][p] * next;
            rn[p] = u[k][p] * next;
        }
        un.front() = 0.0;
        un.back() = 0.0;
        P.push_back(std::move(Pn));
        u.push_back(std::move(un));
        s.push_back(std::move(sn));
        r.push_back(std::move(rn));
    }

    TimeDerivatives out;
    out.order = order;
    auto to_derivs = [&](const Jet& jet) {
        std::vector<Field> d = head(jet, K + 1);
        for (std::size_t j = 0; j < d.size(); ++j) {
            const double f = factorial(static_cast<int>(j));
            for (auto& v : d[j]) {
                v *= f;
            }
        }
        return d;
    };
    out.P = to_derivs(P);
    out.u = to_derivs(u);
    out.s = to_derivs(s);
    out.r = to_derivs(r);
    out.q = to_derivs(q);
    out.w = to_derivs(w);
    out.rho = to_derivs(rho);
    out.theta = to_derivs(theta);
    return out;
}

TimeDerivatives time_derivatives_at_zero(const InitialData& data, int k, const GasParams& gas,
                                         double radiation_coupling) {
    if (k < 1 || k > 2) {
        throw UnsupportedOrderError("time_derivatives_at_zero: order " + std::to_string(k) +
                                    " unsupported (k must be 1 or 2)");
    }
    auto d = semi_discrete_derivatives(data.P, data.u, data.s, data.r, data.grid, gas, k,
                                       radiation_coupling);
    d.q.resize(static_cast<std::size_t>(k));
    d.w.resize(static_cast<std::size_t>(k));
    return d;
}

CompatibilityReport check_compatibility(const InitialData& data, double epsilon, int order,
                                        const GasParams& gas, double radiation_coupling) {
    if (order < 0 || order > 2) {
        throw UnsupportedOrderError("check_compatibility: order must be in [0, 2]");
    }
    const auto& grid = data.grid;
    const double dx = grid.dx();
    const std::size_t n = grid.num_nodes();
    CompatibilityReport rep;
    rep.threshold = 1e-10 * epsilon;

    const std::array<std::size_t, 2> ends{0, n - 1};
    rep.boundary.push_back({std::abs(data.u[0]), std::abs(data.u[n - 1])});

    if (order >= 1) {
        const auto Px = stencil::derivative(data.P, dx);
        std::array<double, 2> v{};
        for (int e = 0; e < 2; ++e) {
            const std::size_t i = ends[e];
            v[e] = std::abs(data.r[i] * data.r[i] * Px[i]);
        }
        rep.boundary.push_back(v);
    }
    if (order >= 2) {
        Field rho(n), theta(n), r2u(n), Prho(n);
        for (std::size_t i = 0; i < n; ++i) {
            rho[i] = rho_from_P_s(data.P[i], data.s[i], gas);
            theta[i] = data.P[i] / rho[i];
            r2u[i] = data.r[i] * data.r[i] * data.u[i];
            Prho[i] = data.P[i] * rho[i];
        }
        const auto Px = stencil::derivative(data.P, dx);
        const auto sx = stencil::derivative(data.s, dx);
        const auto d_r2u = stencil::derivative(r2u, dx);
        const auto dd_r2u = stencil::second_derivative(r2u, dx);
        const auto d_Prho = stencil::derivative(Prho, dx);
        const double kp = gas.pressure_factor();
        const double kq = 1.0 / gas.cv;
        const double c_src = 4.0 * radiation_coupling / (gas.cv + 1.0);
        std::array<double, 2> v{};
        for (int e = 0; e < 2; ++e) {
            const std::size_t i = ends[e];
            const double g =
                -c_src * theta[i] * theta[i] * theta[i] / rho[i] * (Px[i] + data.P[i] * sx[i]);
            // (rho w_x)_x = alpha w - g and w = 0 on the boundary.
            const double Ptx = -kp * (d_Prho[i] * d_r2u[i] + Prho[i] * dd_r2u[i]) + kq * g;
            const double r = data.r[i];
            v[e] = std::abs(-2.0 * r * data.u[i] * Px[i] - r * r * Ptx);
        }
        rep.boundary.push_back(v);
    }
    for (std::size_t k = 0; k < rep.boundary.size(); ++k) {
        if (rep.boundary[k][0] > rep.threshold || rep.boundary[k][1] > rep.threshold) {
            rep.pass = false;
            rep.first_failure = static_cast<int>(k);
            break;
        }
    }
    return rep;
}

}  // namespace radeuler
