#include <doctest.h>

#include <cmath>

#include "radeuler/diagnostics.hpp"
#include "radeuler/errors.hpp"
#include "radeuler/evolution.hpp"
#include "radeuler/initial_data.hpp"
#include "radeuler/stencil.hpp"
#include "support.hpp"

using namespace radeuler;

namespace {

double max_diff(const Field& a, const Field& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

InitialData sine_P(double eps, std::size_t n) {
    InitialDataSpec spec;
    spec.epsilon = eps;
    spec.profile = ProfileKind::SineBump;
    spec.weight_s = 0.0;
    return build_initial_data(spec, AnnulusGeometry{}, n, GasParams{});
}

}  // namespace

TEST_CASE("zero amplitude gives the exact equilibrium") {
    for (auto profile : {ProfileKind::SineBump, ProfileKind::CompactBump}) {
        InitialDataSpec spec;
        spec.epsilon = 0.0;
        spec.profile = profile;
        spec.weight_u = 1.0;
        const auto d = build_initial_data(spec, AnnulusGeometry{}, 32, GasParams{});
        for (std::size_t i = 0; i < d.P.size(); ++i) {
            CHECK(d.P[i] == 1.0);
            CHECK(d.u[i] == 0.0);
            CHECK(d.s[i] == 1.0);
        }
        CHECK(d.perturbation_h2 == 0.0);
        CHECK(d.r.front() == 1.0);
        CHECK(d.r.back() == 2.0);
    }
}

TEST_CASE("perturbation norm is linear in the amplitude up to the O(eps) grid shift") {
    // The mass grid depends on the density, so the sampled profile moves by O(eps).
    const auto a = support::sine(1e-3, 128);
    const auto b = support::sine(5e-4, 128);
    CHECK(a.perturbation_h2 > 0.0);
    CHECK(a.perturbation_h2 / b.perturbation_h2 == doctest::Approx(2.0).epsilon(1e-4));
    const auto c = support::sine(1e-5, 128);
    const auto d = support::sine(5e-6, 128);
    CHECK(c.perturbation_h2 / d.perturbation_h2 == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("velocity vanishes at the boundary and fields follow the weights") {
    InitialDataSpec spec;
    spec.epsilon = 1e-2;
    spec.profile = ProfileKind::SineBump;
    spec.weight_P = 2.0;
    spec.weight_u = 1.0;
    spec.weight_s = -1.0;
    const auto d = build_initial_data(spec, AnnulusGeometry{}, 64, GasParams{});
    CHECK(d.u.front() == 0.0);
    CHECK(d.u.back() == 0.0);
    for (std::size_t i = 1; i + 1 < d.P.size(); ++i) {
        const double phi = profile_value(spec, (d.r[i] - 1.0));
        CHECK(d.P[i] - 1.0 == doctest::Approx(2e-2 * phi).epsilon(1e-12));
        CHECK(d.u[i] == doctest::Approx(1e-2 * phi).epsilon(1e-12));
        CHECK(d.s[i] - 1.0 == doctest::Approx(-1e-2 * phi).epsilon(1e-12));
    }
}

TEST_CASE("compact bump is flat at the boundary") {
    const auto d = support::compact(1e-3, 128);
    const auto Px = stencil::derivative(d.P, d.grid.dx());
    const auto sx = stencil::derivative(d.s, d.grid.dx());
    CHECK(std::abs(Px.front()) <= 1e-12);
    CHECK(std::abs(Px.back()) <= 1e-12);
    CHECK(std::abs(sx.front()) <= 1e-12);
    CHECK(std::abs(sx.back()) <= 1e-12);
    InitialDataSpec spec;
    CHECK(profile_value(spec, 0.0) == 0.0);
    CHECK(profile_value(spec, 0.04) == 0.0);
    CHECK(profile_value(spec, 0.96) == 0.0);
    CHECK(profile_value(spec, 0.5) == doctest::Approx(1.0));
}

TEST_CASE("initial data settings are validated") {
    InitialDataSpec spec;
    spec.epsilon = -1.0;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec = {};
    spec.flatness_order = 0;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec = {};
    spec.width = 0.6;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    spec = {};
    spec.sharpness = 0.0;
    CHECK_THROWS_AS(spec.validate(), DomainError);
    CHECK(parse_profile("compact-bump") == ProfileKind::CompactBump);
    CHECK(to_string(parse_profile("sine-bump")) == "sine-bump");
    CHECK_THROWS_AS(parse_profile("gaussian"), InputError);
}

TEST_CASE("custom samples") {
    const std::size_t n = 16;
    InitialDataSpec spec;
    spec.profile = ProfileKind::Custom;
    spec.epsilon = 1e-2;
    spec.custom_P = std::vector<double>(n + 1, 0.0);
    spec.custom_u = std::vector<double>(n + 1, 0.0);
    spec.custom_s = std::vector<double>(n, 0.0);
    CHECK_THROWS_AS(build_initial_data(spec, AnnulusGeometry{}, n, GasParams{}), InputError);

    spec.custom_s = std::vector<double>(n + 1, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
        spec.custom_P[i] = 1.0 + static_cast<double>(i) / static_cast<double>(n);  // 2 - a + r
    }
    const auto d = build_initial_data(spec, AnnulusGeometry{}, n, GasParams{});
    for (std::size_t i = 0; i <= n; ++i) {
        CHECK(d.P[i] == doctest::Approx(1.0 + 1e-2 * d.r[i]).epsilon(1e-13));
        CHECK(d.s[i] == 1.0);
    }
}

TEST_CASE("time derivatives at equilibrium vanish") {
    const auto d = support::compact(0.0, 32);
    const auto td = time_derivatives_at_zero(d, 2, GasParams{});
    for (int j = 1; j <= 2; ++j) {
        CHECK(stencil::max_abs(td.P[j]) <= 1e-13);
        CHECK(stencil::max_abs(td.u[j]) <= 1e-13);
        CHECK(stencil::max_abs(td.s[j]) <= 1e-13);
        CHECK(stencil::max_abs(td.q[j - 1]) <= 1e-13);
    }
    CHECK(td.q.size() == 2);
    CHECK_THROWS_AS(time_derivatives_at_zero(d, 3, GasParams{}), UnsupportedOrderError);
    CHECK_THROWS_AS(time_derivatives_at_zero(d, 0, GasParams{}), UnsupportedOrderError);
}

TEST_CASE("first time derivative equals the nonlinear tendencies") {
    const auto d = support::compact(1e-3, 64);
    const LagrangianSolver solver(d.grid, GasParams{});
    const auto state = support::state_of(solver, d);
    const auto rhs = solver.rhs(state);
    const auto td = time_derivatives_at_zero(d, 1, GasParams{});
    CHECK(max_diff(td.P[1], rhs.P) <= 1e-15);
    CHECK(max_diff(td.u[1], rhs.u) <= 1e-15);
    CHECK(max_diff(td.s[1], rhs.s) <= 1e-15);
    CHECK(max_diff(td.q[0], state.q) <= 1e-15);
}

TEST_CASE("flat pressure at the boundary gives zero boundary acceleration") {
    const auto d = support::compact(1e-3, 64);
    const auto td = time_derivatives_at_zero(d, 1, GasParams{});
    CHECK(std::abs(td.u[1].front()) <= 1e-13);
    CHECK(std::abs(td.u[1].back()) <= 1e-13);
}

TEST_CASE("time derivatives agree with small nonlinear steps") {
    const auto d = support::compact(1e-3, 64);
    const LagrangianSolver solver(d.grid, GasParams{});
    const auto start = support::state_of(solver, d);
    const auto td = time_derivatives_at_zero(d, 2, GasParams{});
    double prev_first = 0.0;
    double prev_taylor = 0.0;
    for (double h : {4e-3, 2e-3, 1e-3}) {
        const auto next = solver.step(start, h);
        double first = 0.0;
        double taylor = 0.0;
        for (std::size_t i = 0; i < d.P.size(); ++i) {
            first = std::max(first, std::abs((next.u[i] - d.u[i]) / h - td.u[1][i]));
            for (const auto* f : {&td.P, &td.u, &td.s}) {
                const Field& base = f == &td.P ? d.P : f == &td.u ? d.u : d.s;
                const Field& moved = f == &td.P ? next.P : f == &td.u ? next.u : next.s;
                const double rem = moved[i] - base[i] - h * (*f)[1][i] - 0.5 * h * h * (*f)[2][i];
                taylor = std::max(taylor, std::abs(rem));
            }
        }
        if (prev_first > 0.0) {
            MESSAGE("h=", h, " first-order ratio ", prev_first / first, ", Taylor ratio ",
                    prev_taylor / taylor);
            CHECK(prev_first / first >= 1.8);
            CHECK(prev_taylor / taylor >= 6.0);
        }
        prev_first = first;
        prev_taylor = taylor;
    }
}

TEST_CASE("derivative fields are linear in the amplitude") {
    const auto a = time_derivatives_at_zero(support::compact(1e-3, 64), 2, GasParams{});
    const auto b = time_derivatives_at_zero(support::compact(5e-4, 64), 2, GasParams{});
    for (int j = 1; j <= 2; ++j) {
        CHECK(stencil::max_abs(a.P[j]) / stencil::max_abs(b.P[j]) == doctest::Approx(2.0).epsilon(0.05));
        CHECK(stencil::max_abs(a.u[j]) / stencil::max_abs(b.u[j]) == doctest::Approx(2.0).epsilon(0.05));
        CHECK(stencil::max_abs(a.s[j]) / stencil::max_abs(b.s[j]) == doctest::Approx(2.0).epsilon(0.05));
        CHECK(stencil::max_abs(a.q[j - 1]) / stencil::max_abs(b.q[j - 1]) ==
              doctest::Approx(2.0).epsilon(0.05));
    }
}

TEST_CASE("compatibility") {
    const GasParams gas;
    const auto eq = support::compact(0.0, 64);
    CHECK(check_compatibility(eq, 0.0, 2, gas).pass);

    const auto c = support::compact(1e-3, 64);
    const auto rep = check_compatibility(c, 1e-3, 2, gas);
    CHECK(rep.pass);
    CHECK(rep.first_failure == -1);
    CHECK(rep.boundary.size() == 3);
    CHECK(rep.threshold == doctest::Approx(1e-13));

    const auto s = sine_P(1e-3, 64);
    const auto bad = check_compatibility(s, 1e-3, 2, gas);
    CHECK_FALSE(bad.pass);
    CHECK(bad.first_failure == 1);
    CHECK(bad.boundary[0][0] == 0.0);
    CHECK(bad.boundary[1][0] > 1e-6);

    CHECK_THROWS_AS(check_compatibility(c, 1e-3, 3, gas), UnsupportedOrderError);
}

TEST_CASE("initial norm is bounded by the data norm with a mesh-stable constant") {
    const GasParams gas;
    auto constant = [&](std::size_t n) {
        const auto d = support::compact(1e-3, n);
        const LagrangianSolver solver(d.grid, gas);
        const auto norms = state_norms(support::state_of(solver, d), d.grid, gas);
        return norms.m2.sum() / d.perturbation_h2;
    };
    const double c128 = constant(128);
    const double c256 = constant(256);
    MESSAGE("initial norm constant: n=128 ", c128, ", n=256 ", c256);
    CHECK(std::isfinite(c128));
    CHECK(c256 == doctest::Approx(c128).epsilon(0.15));
}
