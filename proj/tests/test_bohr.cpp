#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "qwg/bohr.hpp"
#include "qwg/constants.hpp"

using namespace qwg;
using namespace qwg::bohr;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
} // namespace

TEST_SUITE("bohr") {

TEST_CASE("ground orbit against CODATA") {
    auto o = orbit_from_n(1);
    CHECK(rel(o.r, 5.29177210903e-11) < 1e-6);                               // Bohr radius
    CHECK(rel(o.E / constants::codata.e_charge, -13.605693122994) < 1e-6);   // Rydberg, eV
    CHECK(rel(o.M, constants::codata.hbar) < 1e-15);
    CHECK_THROWS_AS(orbit_from_n(0), domain_error);
}

TEST_CASE("1/n^2 energy law is exact") {
    auto o1 = orbit_from_n(1);
    auto o2 = orbit_from_n(2);
    CHECK(o2.E == o1.E / 4.0);
}

TEST_CASE("force balance residual") {
    for (unsigned n = 1; n <= 5; ++n) {
        auto o = orbit_from_n(n);
        CHECK(std::abs(force_balance_residual(o.r, o.v_e)) < 1e-12);
        CHECK(rel(force_balance_residual(2.0 * o.r, o.v_e), 1.0) < 1e-12);
        CHECK(rel(force_balance_residual(o.r, 2.0 * o.v_e), 3.0) < 1e-12);
    }
    CHECK_THROWS_AS(force_balance_residual(0.0, 1.0), domain_error);
}

TEST_CASE("virial structure: E equals minus the kinetic energy") {
    for (unsigned n = 1; n <= 10; ++n) {
        auto o = orbit_from_n(n);
        CHECK(o.E == -0.5 * constants::codata.m_e * o.v_e * o.v_e);
    }
}

TEST_CASE("phase accordance across the velocity sweep") {
    std::vector<double> zs;
    for (int i = 1; i <= 100; ++i)
        zs.push_back(0.07 * i);
    for (int iv = 1; iv <= 99; ++iv) {
        const double v = iv / 100.0;
        for (const auto& p : phase_accordance(v, zs))
            CHECK(rel(p.phi_wave, p.phi_clock) < 1e-12);
    }
    // one clock period of travel winds exactly one clock cycle
    const double v = 0.6;
    const double f_clock = std::sqrt(1.0 - v * v);
    auto pp = phase_accordance(v, {v / f_clock});
    CHECK(rel(pp[0].phi_clock, 1.0) < 1e-12);
    CHECK_THROWS_AS(phase_accordance(0.0, zs), domain_error);
    CHECK_THROWS_AS(phase_accordance(1.0, zs), domain_error);
}

TEST_CASE("extra arc time") {
    CHECK(extra_arc_time(0.0, 1.0) == 0.0);
    CHECK(rel(extra_arc_time(1.0 / std::numbers::sqrt2, 3.0), 3.0) < 1e-12);
    // defining relation: c^2 tau / v = (tau + T) v
    for (int i = 1; i < 50; ++i) {
        const double v = 0.02 * i;
        const double T = 0.3 + 0.1 * i;
        const double tau = extra_arc_time(v, T);
        CHECK(rel(tau / v, (tau + T) * v) < 1e-12);
    }
    CHECK_THROWS_AS(extra_arc_time(1.0, 1.0), domain_error);
    CHECK_THROWS_AS(extra_arc_time(0.5, 0.0), domain_error);
}

TEST_CASE("quantization number reproduces n to 1e-4") {
    for (unsigned n = 1; n <= 10; ++n) {
        auto o = orbit_from_n(n);
        const double N = orbit_quantization_number(o);
        CHECK(rel(N, static_cast<double>(n)) < 1e-4);
    }
}

TEST_CASE("non-relativistic reduction m v^2 T = N h") {
    for (unsigned n = 1; n <= 5; ++n) {
        auto o = orbit_from_n(n);
        const double N = orbit_quantization_number(o);
        const double lhs = constants::codata.m_e * o.v_e * o.v_e * o.T / constants::codata.h;
        const double beta2 = std::pow(o.v_e / constants::codata.c, 2);
        CHECK(rel(lhs, N) < beta2 + 1e-12); // agreement up to O(v^2/c^2)
    }
}

TEST_CASE("quantization residual scales as 1/n^2") {
    std::vector<double> lx, ly;
    for (unsigned n = 1; n <= 10; ++n) {
        auto o = orbit_from_n(n);
        const double res = orbit_quantization_number(o) / n - 1.0;
        lx.push_back(std::log(static_cast<double>(n)));
        ly.push_back(std::log(std::abs(res)));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto m = static_cast<double>(lx.size());
    for (std::size_t i = 0; i < lx.size(); ++i)
        sx += lx[i], sy += ly[i], sxx += lx[i] * lx[i], sxy += lx[i] * ly[i];
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(std::abs(slope + 2.0) < 0.1);
}

TEST_CASE("guide width to Bohr radius ratio is pi alpha") {
    const double w = constants::waveguide_width(constants::codata.m_e);
    const double ratio = w / orbit_from_n(1).r;
    CHECK(rel(ratio, 0.022925309222367483) < 1e-6); // pi * alpha
}

} // TEST_SUITE
