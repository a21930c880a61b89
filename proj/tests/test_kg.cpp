#include "doctest.h"

#include <cmath>
#include <numbers>

#include "qwg/dispersion.hpp"
#include "qwg/kg_solver.hpp"

using namespace qwg;
using namespace qwg::kg;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
} // namespace

TEST_SUITE("kg") {

TEST_CASE("uniform field oscillates at the cutoff frequency") {
    Grid1D g(0.0, 1.0, 16);
    auto r = measure_mode_frequency(g, 1.0, 0.0, 5e-4, 60.0);
    CHECK(rel(r.f_measured, 1.0) < 1e-6);
}

TEST_CASE("resolved plane wave matches the dispersion relation to 1e-4") {
    // 64 points per wavelength, one wavelength per domain
    const double k_plain = 0.25;
    const double kappa = 2.0 * std::numbers::pi * k_plain;
    Grid1D g(0.0, 2.0 * std::numbers::pi / kappa, 64);
    auto r = measure_mode_frequency(g, 1.0, kappa, 3e-3, 50.0);
    const double f_exact = dispersion::kg_frequency(k_plain, 1.0);
    CHECK(rel(r.f_measured, f_exact) < 1e-4);
}

TEST_CASE("zero initial data stays zero") {
    Grid1D g(0.0, 4.0, 64);
    RealField1D f;
    f.grid = g;
    f.u.assign(g.n, 0.0);
    f.u_prev.assign(g.n, 0.0);
    evolve_kg(f, 1.0, 0.01, 500);
    for (double v : f.u)
        CHECK(v == 0.0);
}

TEST_CASE("energy invariant drifts below 1e-6 over 1e4 steps at CFL 0.5") {
    Grid1D g(0.0, 8.0, 256);
    std::vector<double> profile(g.n);
    for (std::size_t j = 0; j < g.n; ++j)
        profile[j] = std::cos(2.0 * std::numbers::pi * g.z(j) / 8.0) +
                     0.3 * std::sin(6.0 * std::numbers::pi * g.z(j) / 8.0);
    const double dt = 0.5 * g.dz();
    auto f = rest_start(g, profile, 1.0, dt);
    const double e0 = discrete_energy(f, 1.0);
    double worst = 0.0;
    for (int chunk = 0; chunk < 100; ++chunk) {
        evolve_kg(f, 1.0, dt, 100);
        worst = std::max(worst, std::abs(discrete_energy(f, 1.0) - e0) / std::abs(e0));
    }
    CHECK(worst < 1e-6);
}

TEST_CASE("measured frequency converges at second order") {
    const double k_plain = 0.4;
    const double kappa = 2.0 * std::numbers::pi * k_plain;
    const double f_exact = dispersion::kg_frequency(k_plain, 1.0);
    double errs[2];
    std::size_t ns[2] = {64, 128};
    for (int i = 0; i < 2; ++i) {
        Grid1D g(0.0, 2.0 * std::numbers::pi / kappa, ns[i]);
        const double dt = 0.25 * g.dz(); // fixed CFL
        auto r = measure_mode_frequency(g, 1.0, kappa, dt, 40.0);
        errs[i] = std::abs(r.f_measured - f_exact);
    }
    CHECK(errs[0] / errs[1] > 3.0);
    CHECK(errs[0] / errs[1] < 5.2);
}

TEST_CASE("leapfrog is exactly time reversible") {
    Grid1D g(0.0, 8.0, 128);
    std::vector<double> profile(g.n);
    for (std::size_t j = 0; j < g.n; ++j)
        profile[j] = std::exp(-std::pow(g.z(j) - 4.0, 2));
    const double dt = 0.4 * g.dz();
    auto f = rest_start(g, profile, 1.0, dt);
    const auto u0 = f.u;
    const auto up0 = f.u_prev;
    evolve_kg(f, 1.0, dt, 800);
    reverse_time(f);
    evolve_kg(f, 1.0, dt, 800);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.n; ++j)
        worst = std::max(worst, std::abs(f.u[j] - up0[j]));
    // after reversal the roles of the two levels swap
    for (std::size_t j = 0; j < g.n; ++j)
        worst = std::max(worst, std::abs(f.u_prev[j] - u0[j]));
    CHECK(worst < 1e-10);
}

TEST_CASE("cfl and stability preconditions") {
    Grid1D g(0.0, 1.0, 64);
    RealField1D f;
    f.grid = g;
    f.u.assign(g.n, 0.0);
    f.u_prev.assign(g.n, 0.0);
    CHECK_THROWS_AS(evolve_kg(f, 1.0, 2.0 * g.dz(), 1), config_error);      // dt > dz/c
    CHECK_THROWS_AS(evolve_kg(f, 60.0, 0.9 * g.dz(), 1), config_error);     // mass term
    CHECK_THROWS_AS(evolve_kg(f, 1.0, -0.1, 1), config_error);
}

TEST_CASE("evanescent decay rate closed form") {
    CHECK(rel(evanescent_decay_rate(0.6, 1.0), 2.0 * std::numbers::pi * 0.8) < 1e-15);
    CHECK(evanescent_decay_rate(0.999999, 1.0) < 0.01);
    CHECK_THROWS_AS(evanescent_decay_rate(1.0, 1.0), domain_error);
    CHECK_THROWS_AS(evanescent_decay_rate(1.5, 1.0), domain_error);
    CHECK_THROWS_AS(evanescent_decay_rate(0.0, 1.0), domain_error);
}

TEST_CASE("driven sub-cutoff field decays at the closed-form rate within 2%") {
    auto fit = driven_decay_experiment(0.6, 1.0);
    CHECK(fit.rel_error < 0.02);
}

} // TEST_SUITE
