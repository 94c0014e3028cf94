#include "radeuler/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "radeuler/errors.hpp"
#include "radeuler/initial_data.hpp"
#include "radeuler/stencil.hpp"

namespace radeuler {

namespace {

double sq(double v) { return v * v; }

Field shifted(const Field& f, double c) {
    Field out(f);
    for (auto& v : out) {
        v -= c;
    }
    return out;
}

}  // namespace

double sobolev_norm(std::span<const double> f, int j, double dx) {
    if (j < 0 || j > 2) {
        throw UnsupportedOrderError("sobolev_norm: order must be 0, 1 or 2");
    }
    double sum = sq(stencil::l2_norm(f, dx));
    if (j >= 1) {
        sum += sq(stencil::l2_norm(stencil::derivative(f, dx), dx));
    }
    if (j >= 2) {
        sum += sq(stencil::l2_norm(stencil::second_derivative(f, dx), dx));
    }
    return std::sqrt(sum);
}

double discrete_norm(std::span<const Field> time_derivs, int m, double dx) {
    if (m < 0 || m > 2 || time_derivs.size() < static_cast<std::size_t>(m + 1)) {
        throw UnsupportedOrderError("discrete_norm: need m in [0, 2] and m + 1 time derivatives");
    }
    double total = 0.0;
    for (int k = 0; k <= m; ++k) {
        total += sobolev_norm(time_derivs[static_cast<std::size_t>(k)], m - k, dx);
    }
    return total;
}

double tangential_norm(std::span<const Field> time_derivs, int m, double dx) {
    if (m < 0 || m > 2 || time_derivs.size() < static_cast<std::size_t>(m + 1)) {
        throw UnsupportedOrderError("tangential_norm: need m in [0, 2] and m + 1 time derivatives");
    }
    double total = 0.0;
    for (int k = 0; k <= m; ++k) {
        total += stencil::l2_norm(time_derivs[static_cast<std::size_t>(k)], dx);
    }
    return total;
}

StateNorms state_norms(const SimState& state, const MassGrid& grid, const GasParams& gas,
                       double radiation_coupling) {
    const double dx = grid.dx();
    const auto d = semi_discrete_derivatives(state.P, state.u, state.s, state.r, grid, gas, 2,
                                             radiation_coupling);
    std::vector<Field> P{shifted(d.P[0], 1.0), d.P[1], d.P[2]};
    std::vector<Field> s{shifted(d.s[0], 1.0), d.s[1], d.s[2]};
    const auto& u = d.u;
    const auto& q = d.q;
    std::vector<Field> qx;
    for (const auto& c : q) {
        qx.push_back(stencil::derivative(c, dx));
    }

    StateNorms out;
    auto fill = [&](double ComponentNorms::*member, const std::vector<Field>& f) {
        out.l2.*member = stencil::l2_norm(f[0], dx);
        out.l2_x.*member = stencil::l2_norm(stencil::derivative(f[0], dx), dx);
        out.l2_t.*member = stencil::l2_norm(f[1], dx);
        out.m1.*member = discrete_norm(f, 1, dx);
        out.m2.*member = discrete_norm(f, 2, dx);
        out.m1_tan.*member = tangential_norm(f, 1, dx);
        out.m2_tan.*member = tangential_norm(f, 2, dx);
    };
    fill(&ComponentNorms::P, P);
    fill(&ComponentNorms::u, u);
    fill(&ComponentNorms::s, s);
    fill(&ComponentNorms::q, q);
    fill(&ComponentNorms::qx, qx);
    out.data_m2 = out.m2.P + out.m2.u + out.m2.s;

    // DP = (P_t, P_x), Ds = (s_t, s_x) measured in |||.|||_1.
    auto dt_field = [](const std::vector<Field>& f) { return std::vector<Field>{f[1], f[2]}; };
    auto dx_field = [&](const std::vector<Field>& f) {
        return std::vector<Field>{stencil::derivative(f[0], dx), stencil::derivative(f[1], dx)};
    };
    const double dP = discrete_norm(dt_field(P), 1, dx) + discrete_norm(dx_field(P), 1, dx);
    const double ds = discrete_norm(dt_field(s), 1, dx) + discrete_norm(dx_field(s), 1, dx);
    out.dissipation = sq(dP + ds) + sq(out.m2.u + out.m2.q + out.m2.qx);
    return out;
}

EnergyPair energy_m0(const SimState& state, const MassGrid& grid, const GasParams& gas) {
    const auto eq = equilibrium_constants(gas);
    const double dx = grid.dx();
    const std::size_t n = state.P.size();
    const double wP = gas.cv / ((gas.cv + 1.0) * eq.rho);
    const double ws = eq.theta / ((gas.cv + 1.0) * eq.rho);
    const double t3 = eq.theta * eq.theta * eq.theta;
    Field e(n), d(n);
    Field w(n);
    for (std::size_t i = 0; i < n; ++i) {
        w[i] = state.r[i] * state.r[i] * state.q[i];
    }
    const auto wx = stencil::derivative(w, dx);
    for (std::size_t i = 0; i < n; ++i) {
        e[i] = wP * sq(state.P[i] - 1.0) + sq(state.u[i]) + ws * sq(state.s[i] - 1.0);
        d[i] = sq(state.q[i]) / (4.0 * t3) + sq(eq.rho) / (4.0 * t3) * sq(wx[i]);
    }
    return {stencil::trapezoid(e, dx), stencil::trapezoid(d, dx)};
}

PerturbationSources perturbation_sources(const SimState& state, const MassGrid& grid,
                                         const GasParams& gas, double radiation_coupling) {
    const auto eq = equilibrium_constants(gas);
    const double dx = grid.dx();
    const std::size_t n = state.P.size();
    const double kp = gas.pressure_factor();
    const double kq = 1.0 / gas.cv;
    const double c_src = 4.0 * radiation_coupling / (gas.cv + 1.0);
    const double crho2 = eq.rho * eq.rho;
    const double ctheta3 = eq.theta * eq.theta * eq.theta;

    Field r2u(n), w(n), rho2(n), p(n), sigma(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double r2 = state.r[i] * state.r[i];
        r2u[i] = r2 * state.u[i];
        w[i] = r2 * state.q[i];
        rho2[i] = state.rho[i] * state.rho[i];
        p[i] = state.P[i] - 1.0;
        sigma[i] = state.s[i] - 1.0;
    }
    const auto div_u = stencil::derivative(r2u, dx);
    const auto wx = stencil::derivative(w, dx);
    const auto wxx = stencil::second_derivative(w, dx);
    const auto rho2x = stencil::derivative(rho2, dx);
    const auto px = stencil::derivative(p, dx);
    const auto sx = stencil::derivative(sigma, dx);

    PerturbationSources out{Field(n), Field(n), Field(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const double rho = state.rho[i];
        const double theta = state.theta[i];
        const double r2 = state.r[i] * state.r[i];
        const double t3 = theta * theta * theta;
        out.S1[i] = kp * ((eq.rho - rho) - rho * p[i]) * div_u[i] + kq * (eq.rho - rho) * wx[i];
        out.S3[i] = (1.0 / eq.theta - 1.0 / theta) * wx[i];
        out.S4[i] = r2 * (rho2[i] - crho2) * wxx[i] +
                    c_src * r2 * (ctheta3 - t3) * (px[i] + sx[i]) + 0.5 * r2 * rho2x[i] * wx[i] -
                    c_src * r2 * t3 * p[i] * sx[i];
    }
    return out;
}

PerturbationResiduals perturbation_residuals(const SimState& state, const MassGrid& grid,
                                             const GasParams& gas, double radiation_coupling) {
    const auto src = perturbation_sources(state, grid, gas, radiation_coupling);
    const double dx = grid.dx();
    return {stencil::l2_norm(src.S1, dx), stencil::l2_norm(src.S3, dx),
            stencil::l2_norm(src.S4, dx)};
}

DiagnosticsAccumulator::DiagnosticsAccumulator(MassGrid grid, GasParams gas,
                                               double radiation_coupling)
    : grid_(grid), gas_(gas), coupling_(radiation_coupling) {}

const DiagnosticRecord& DiagnosticsAccumulator::add(const SimState& state) {
    DiagnosticRecord rec;
    rec.t = state.t;
    const auto e = energy_m0(state, grid_, gas_);
    rec.E0 = e.E0;
    rec.D0 = e.D0;
    rec.norms = state_norms(state, grid_, gas_, coupling_);
    const double m2sq = sq(rec.norms.m2.sum());
    if (records_.empty()) {
        reference_ = sq(rec.norms.data_m2);
        rec.sup_m2_sq = m2sq;
    } else {
        const auto& prev = records_.back();
        if (!(state.t > prev.t)) {
            throw InputError("diagnostics: states must be added in increasing time");
        }
        const double h = state.t - prev.t;
        rec.cumulative_D0 = prev.cumulative_D0 + 0.5 * h * (prev.D0 + rec.D0);
        rec.cumulative_dissipation =
            prev.cumulative_dissipation + 0.5 * h * (prev.norms.dissipation + rec.norms.dissipation);
        rec.sup_m2_sq = std::max(prev.sup_m2_sq, m2sq);
    }
    rec.apriori_lhs = rec.sup_m2_sq + rec.cumulative_dissipation;
    if (reference_ > 0.0) {
        const double ratio = rec.apriori_lhs / reference_;
        rec.C0 = records_.empty() ? ratio : std::max(records_.back().C0, ratio);
    } else {
        rec.C0 = 1.0;
    }
    records_.push_back(rec);
    return records_.back();
}

AprioriResult apriori_monitor(std::span<const DiagnosticRecord> records, double ceiling) {
    AprioriResult out;
    out.ceiling = ceiling;
    if (records.empty()) {
        return out;
    }
    out.reference = sq(records.front().norms.data_m2);
    double c0 = 0.0;
    for (const auto& rec : records) {
        if (out.reference > 0.0) {
            c0 = std::max(c0, rec.apriori_lhs / out.reference);
        }
        out.margin.push_back(ceiling * out.reference - rec.apriori_lhs);
    }
    out.C0 = out.reference > 0.0 ? c0 : 1.0;
    out.pass = out.C0 <= ceiling;
    return out;
}

}  // namespace radeuler
