#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "qwg/errors.hpp"

namespace qwg::dispersion {

/// Relativistic guide kinematics at one velocity. Normalized units:
/// velocities are fractions of c, frequencies are in units of the cutoff
/// f_o, phase velocity in units of c.
struct KinematicState {
    double v = 0.0;       // fraction of c, in [0, 1)
    double gamma = 1.0;   // 1/sqrt(1 - v^2)
    double f_clock = 1.0; // f_o sqrt(1 - v^2); equals the zigzag frequency
    double f_wave = 1.0;  // f_o / sqrt(1 - v^2)
    double phi = 0.0;     // zigzag angle, asin(v)
    double v_phase = std::numeric_limits<double>::infinity(); // 1/v; +inf at rest
};

inline void require_subluminal(double v, const char* who) {
    if (!(v >= 0.0) || v >= 1.0)
        throw domain_error(std::string(who) + ": velocity must lie in [0, 1)");
}

/// f_clock = f_o sqrt(1 - v^2): the internal clock slows with motion.
inline double clock_frequency(double f_o, double v) {
    require_subluminal(v, "clock_frequency");
    return f_o * std::sqrt(1.0 - v * v);
}

/// f_wave = f_o / sqrt(1 - v^2): the guided wave speeds up with motion.
inline double wave_frequency(double f_o, double v) {
    require_subluminal(v, "wave_frequency");
    return f_o / std::sqrt(1.0 - v * v);
}

/// Full kinematic state at velocity v (f_o = 1 units). v = 0 is legal and
/// reported with an infinite phase velocity, matching the k -> 0 limit.
inline KinematicState zigzag_state(double v) {
    require_subluminal(v, "zigzag_state");
    KinematicState s;
    s.v = v;
    s.gamma = 1.0 / std::sqrt(1.0 - v * v);
    s.f_clock = std::sqrt(1.0 - v * v);
    s.f_wave = s.gamma;
    s.phi = std::asin(v);
    s.v_phase = v > 0.0 ? 1.0 / v : std::numeric_limits<double>::infinity();
    return s;
}

/// Guided-mode dispersion f = sqrt(f_o^2 + k^2), c = 1, k in cutoff units.
inline double kg_frequency(double k, double f_o) {
    if (!(f_o > 0.0))
        throw domain_error("kg_frequency: cutoff must be positive");
    return std::sqrt(f_o * f_o + k * k);
}

/// Parabolic low-velocity branch: f_o + k^2/(2 f_o) with the rest term, or
/// the bare kinetic k^2/(2 f_o) without it.
inline double schrodinger_frequency(double k, double f_o, bool include_rest = true) {
    if (!(f_o > 0.0))
        throw domain_error("schrodinger_frequency: cutoff must be positive");
    const double kinetic = k * k / (2.0 * f_o);
    return include_rest ? f_o + kinetic : kinetic;
}

/// The three sampled branches of the normalized dispersion diagram.
/// The clock branch is plotted against the reciprocal abscissa: the value
/// stored at k is f_clock of the state whose wavenumber is 1/k.
struct DispersionCurve {
    std::vector<double> k_samples;
    std::vector<double> f_kg;
    std::vector<double> f_schrod;
    std::vector<double> f_clock_branch;
};

inline DispersionCurve dispersion_table(double k_min, double k_max, std::size_t n_points,
                                        double f_o) {
    if (n_points < 2)
        throw domain_error("dispersion_table: need at least 2 points");
    if (!(k_min < k_max))
        throw domain_error("dispersion_table: k_min must be below k_max");
    if (!(f_o > 0.0))
        throw domain_error("dispersion_table: cutoff must be positive");
    DispersionCurve out;
    out.k_samples.reserve(n_points);
    const double dk = (k_max - k_min) / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double k = k_min + dk * static_cast<double>(i);
        out.k_samples.push_back(k);
        out.f_kg.push_back(kg_frequency(k, f_o));
        out.f_schrod.push_back(schrodinger_frequency(k, f_o, true));
        // Clock branch at abscissa k belongs to the state with wavenumber
        // 1/k: gamma = sqrt(f_o^2 + (1/k)^2)/f_o, f_clock = f_o/gamma.
        out.f_clock_branch.push_back(
            k != 0.0 ? f_o * f_o * std::abs(k) / std::sqrt(f_o * f_o * k * k + 1.0) : 0.0);
    }
    return out;
}

} // namespace qwg::dispersion
