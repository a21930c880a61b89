#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "qwg/constants.hpp"
#include "qwg/errors.hpp"

namespace qwg::bohr {

/// Circular orbit in SI quantities. The force balance is the Gaussian-form
/// m v^2 r = e^2; in SI every e^2 below means e^2/(4 pi epsilon0).
struct BohrOrbit {
    unsigned n = 1;
    double r = 0.0;   // m
    double v_e = 0.0; // m/s
    double E = 0.0;   // J
    double M = 0.0;   // J s
    double T = 0.0;   // s
};

inline double coulomb_e2(const constants::PhysicalConstants& k = constants::codata) {
    return k.e_charge * k.e_charge / (4.0 * std::numbers::pi * k.epsilon0);
}

/// Closed-form Bohr system from M = n hbar and the force balance:
/// v = e^2/(n hbar), r = n^2 hbar^2/(m e^2), E = -m v^2 / 2.
inline BohrOrbit orbit_from_n(unsigned n, const constants::PhysicalConstants& k = constants::codata) {
    if (n < 1)
        throw domain_error("orbit_from_n: n must be a positive integer");
    const double e2 = coulomb_e2(k);
    BohrOrbit o;
    o.n = n;
    o.v_e = e2 / (static_cast<double>(n) * k.hbar);
    o.r = static_cast<double>(n) * static_cast<double>(n) * k.hbar * k.hbar / (k.m_e * e2);
    o.E = -0.5 * k.m_e * o.v_e * o.v_e;
    o.M = static_cast<double>(n) * k.hbar;
    o.T = 2.0 * std::numbers::pi * o.r / o.v_e;
    return o;
}

/// (m v^2 r - e^2) / e^2: zero exactly when the centrifugal and Coulomb
/// forces balance.
inline double force_balance_residual(double r, double v_e,
                                     const constants::PhysicalConstants& k = constants::codata) {
    if (!(r > 0.0) || !(v_e > 0.0))
        throw domain_error("force_balance_residual: r and v_e must be positive");
    const double e2 = coulomb_e2(k);
    return (k.m_e * v_e * v_e * r - e2) / e2;
}

/// Clock phase and wave phase at arc position z, both in cycles, computed by
/// two independent routes (normalized f_o = 1, c = 1).
struct PhasePair {
    double phi_clock = 0.0;
    double phi_wave = 0.0;
    double z = 0.0;
    double v = 0.0;
};

/// phi_clock(z) = f_clock z / v, directly. phi_wave(z) comes through the
/// Lorentz-transformed wave phase f_wave (t - z/V_phase) evaluated at the
/// arrival time t = z/v. The accordance law says they agree identically.
inline std::vector<PhasePair> phase_accordance(double v, const std::vector<double>& z_samples) {
    if (!(v > 0.0) || v >= 1.0)
        throw domain_error("phase_accordance: v must lie in (0, 1)");
    const double gamma = 1.0 / std::sqrt(1.0 - v * v);
    const double f_clock = 1.0 / gamma;
    const double f_wave = gamma;
    std::vector<PhasePair> out;
    out.reserve(z_samples.size());
    for (double z : z_samples) {
        PhasePair p;
        p.z = z;
        p.v = v;
        p.phi_clock = f_clock * z / v;
        p.phi_wave = f_wave * (z / v - v * z); // t - z V_phase / c^2 with V_phase = 1/v
        out.push_back(p);
    }
    return out;
}

/// Extra time needed for the wave pattern and the clock to re-align after a
/// full period: tau = T v^2 / (1 - v^2) (c = 1).
inline double extra_arc_time(double v, double T) {
    if (!(v >= 0.0) || v >= 1.0)
        throw domain_error("extra_arc_time: v must lie in [0, 1)");
    if (!(T > 0.0))
        throw domain_error("extra_arc_time: period must be positive");
    return T * v * v / (1.0 - v * v);
}

/// N = f_clock(v) * tau(v, T): the phase advance over the extra arc in
/// cycles. For Bohr orbits fed in it reproduces the integer n up to
/// corrections of order (v/c)^2.
inline double quantization_number(double v, double T, double f_o) {
    if (!(v > 0.0) || v >= 1.0)
        throw domain_error("quantization_number: v must lie in (0, 1)");
    if (!(f_o > 0.0))
        throw domain_error("quantization_number: f_o must be positive");
    const double f_clock = f_o * std::sqrt(1.0 - v * v);
    return f_clock * extra_arc_time(v, T);
}

/// SI bridge: run quantization_number on an orbit's own (v/c, T) with the
/// electron cutoff frequency.
inline double orbit_quantization_number(const BohrOrbit& o,
                                        const constants::PhysicalConstants& k = constants::codata) {
    const double beta = o.v_e / k.c;
    const double f_o = constants::compton_cutoff(k.m_e, k);
    return quantization_number(beta, o.T, f_o);
}

} // namespace qwg::bohr
