#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qwg/errors.hpp"
#include "qwg/fft.hpp"
#include "qwg/grid.hpp"

namespace qwg::ambiguity {

enum class PulseShape { Gaussian, Sech, Rectangular, Custom };

struct PulseProfile {
    Grid1D grid;
    std::vector<cdouble> samples;
    PulseShape label = PulseShape::Custom;
};

inline PulseProfile gaussian_pulse(const Grid1D& g, double sigma = 1.0, double center = 0.0) {
    if (!(sigma > 0.0))
        throw domain_error("gaussian_pulse: sigma must be positive");
    PulseProfile p{g, std::vector<cdouble>(g.n), PulseShape::Gaussian};
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = (g.z(j) - center) / sigma;
        p.samples[j] = std::exp(-0.5 * x * x);
    }
    return p;
}

inline PulseProfile chirped_gaussian_pulse(const Grid1D& g, double chirp, double sigma = 1.0) {
    PulseProfile p{g, std::vector<cdouble>(g.n), PulseShape::Custom};
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.z(j) / sigma;
        const double amp = std::exp(-0.5 * x * x);
        const double ph = chirp * g.z(j) * g.z(j);
        p.samples[j] = amp * cdouble(std::cos(ph), std::sin(ph));
    }
    return p;
}

inline PulseProfile sech_pulse(const Grid1D& g, double a = 1.0, double center = 0.0) {
    if (!(a > 0.0))
        throw domain_error("sech_pulse: scale must be positive");
    PulseProfile p{g, std::vector<cdouble>(g.n), PulseShape::Sech};
    for (std::size_t j = 0; j < g.n; ++j)
        p.samples[j] = 1.0 / std::cosh(a * (g.z(j) - center));
    return p;
}

inline PulseProfile rectangular_pulse(const Grid1D& g, double duration, double center = 0.0) {
    if (!(duration > 0.0))
        throw domain_error("rectangular_pulse: duration must be positive");
    PulseProfile p{g, std::vector<cdouble>(g.n), PulseShape::Rectangular};
    // half-open support so the sampled width is exactly duration/dz cells
    for (std::size_t j = 0; j < g.n; ++j) {
        const double x = g.z(j) - center;
        p.samples[j] = (x >= -0.5 * duration && x < 0.5 * duration) ? 1.0 : 0.0;
    }
    return p;
}

inline PulseProfile custom_pulse(const Grid1D& g, std::vector<cdouble> samples) {
    if (samples.size() != g.n)
        throw config_error("custom_pulse: sample count does not match grid");
    return {g, std::move(samples), PulseShape::Custom};
}

struct MomentWidths {
    double delta_x = 0.0;
    double delta_k = 0.0;
    bool delta_k_divergent = false; // exact second spectral moment diverges
};

/// Second-moment widths in position and (angular) wavenumber. The spectral
/// density comes from the DFT of the samples; a rectangular pulse's exact
/// delta_k diverges, so its finite grid value carries the flag.
inline MomentWidths moment_widths(const PulseProfile& p) {
    if (!p.grid.power_of_two())
        throw config_error("moment_widths: grid size must be a power of two");
    const auto mom = density_moments(p.grid, p.samples);

    std::vector<cdouble> spec = p.samples;
    FftPlan plan(p.grid.n);
    plan.forward(spec);
    double w = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const double pk = std::norm(spec[j]);
        const double k = fft_wavenumber(j, p.grid.n, p.grid.length());
        w += pk;
        m1 += pk * k;
        m2 += pk * k * k;
    }
    if (!(w > 0.0))
        throw domain_error("moment_widths: zero spectrum");
    const double kmean = m1 / w;
    const double kvar = m2 / w - kmean * kmean;

    MomentWidths out;
    out.delta_x = std::sqrt(std::max(0.0, mom.variance));
    out.delta_k = std::sqrt(std::max(0.0, kvar));
    out.delta_k_divergent = p.label == PulseShape::Rectangular;
    return out;
}

inline double uncertainty_product(const PulseProfile& p) {
    const auto w = moment_widths(p);
    return w.delta_x * w.delta_k;
}

struct AmbiguitySurface {
    std::vector<double> delay_axis;
    std::vector<double> doppler_axis;
    std::vector<double> magnitude; // row-major: [i_delay * n_doppler + i_doppler]
    bool resolution_warning = false;

    double at(std::size_t i_delay, std::size_t i_doppler) const {
        return magnitude[i_delay * doppler_axis.size() + i_doppler];
    }
};

/// chi(tau, f_d) = integral u(t) u*(t - tau) exp(i 2 pi f_d t) dt on the
/// requested lattice, peak-normalized. Delays are snapped to grid multiples
/// so the shifted pulse needs no interpolation. Doppler is in cycles.
inline AmbiguitySurface ambiguity_surface(const PulseProfile& p, std::size_t n_delay,
                                          std::size_t n_doppler, double delay_max,
                                          double doppler_max) {
    if (n_delay < 3 || n_doppler < 3)
        throw config_error("ambiguity_surface: lattice too small");
    if (!(delay_max > 0.0) || !(doppler_max > 0.0))
        throw config_error("ambiguity_surface: spans must be positive");

    const Grid1D& g = p.grid;
    const double dz = g.dz();
    std::vector<cdouble> u = p.samples;
    double nrm = std::sqrt(norm_squared(u, dz));
    if (!(nrm > 0.0))
        throw domain_error("ambiguity_surface: zero pulse");
    for (auto& v : u)
        v /= nrm;

    AmbiguitySurface out;
    const auto half_d = static_cast<std::ptrdiff_t>(n_delay / 2);
    const auto shift_max = static_cast<std::ptrdiff_t>(std::llround(delay_max / dz));
    out.delay_axis.resize(n_delay);
    std::vector<std::ptrdiff_t> shifts(n_delay);
    for (std::size_t i = 0; i < n_delay; ++i) {
        const auto rel = static_cast<std::ptrdiff_t>(i) - half_d;
        const auto s = shift_max == 0
                           ? rel
                           : static_cast<std::ptrdiff_t>(std::llround(
                                 static_cast<double>(rel) / static_cast<double>(half_d) *
                                 static_cast<double>(shift_max)));
        shifts[i] = s;
        out.delay_axis[i] = static_cast<double>(s) * dz;
    }
    out.doppler_axis.resize(n_doppler);
    for (std::size_t i = 0; i < n_doppler; ++i)
        out.doppler_axis[i] =
            (-1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n_doppler - 1)) * doppler_max;

    // resolution heuristic: the lattice should resolve the mainlobe
    const double tau_step = n_delay > 1 ? (out.delay_axis.back() - out.delay_axis.front()) /
                                              static_cast<double>(n_delay - 1)
                                        : 0.0;
    const auto widths = moment_widths(p);
    if (tau_step > widths.delta_x || (out.doppler_axis[1] - out.doppler_axis[0]) >
                                         widths.delta_k / (2.0 * std::numbers::pi))
        out.resolution_warning = true;

    out.magnitude.assign(n_delay * n_doppler, 0.0);
    const auto n = static_cast<std::ptrdiff_t>(g.n);
    for (std::size_t i = 0; i < n_delay; ++i) {
        const std::ptrdiff_t s = shifts[i];
        for (std::size_t m = 0; m < n_doppler; ++m) {
            const double w = 2.0 * std::numbers::pi * out.doppler_axis[m];
            cdouble acc = 0.0;
            const std::ptrdiff_t j0 = std::max<std::ptrdiff_t>(0, s);
            const std::ptrdiff_t j1 = std::min<std::ptrdiff_t>(n, n + s);
            for (std::ptrdiff_t j = j0; j < j1; ++j) {
                const double t = g.z(static_cast<std::size_t>(j));
                acc += u[static_cast<std::size_t>(j)] *
                       std::conj(u[static_cast<std::size_t>(j - s)]) *
                       cdouble(std::cos(w * t), std::sin(w * t));
            }
            out.magnitude[i * n_doppler + m] = std::abs(acc) * dz;
        }
    }
    return out;
}

/// Trapezoid integral of |chi|^2 over the surface lattice; the ambiguity
/// volume theorem makes it 1 for a normalized pulse and a covering lattice.
inline double surface_volume(const AmbiguitySurface& s) {
    const std::size_t nd = s.delay_axis.size();
    const std::size_t nf = s.doppler_axis.size();
    const double dtau = (s.delay_axis.back() - s.delay_axis.front()) / static_cast<double>(nd - 1);
    const double dfd = (s.doppler_axis.back() - s.doppler_axis.front()) / static_cast<double>(nf - 1);
    double acc = 0.0;
    for (std::size_t i = 0; i < nd; ++i) {
        const double wi = (i == 0 || i + 1 == nd) ? 0.5 : 1.0;
        for (std::size_t m = 0; m < nf; ++m) {
            const double wm = (m == 0 || m + 1 == nf) ? 0.5 : 1.0;
            acc += wi * wm * s.at(i, m) * s.at(i, m);
        }
    }
    return acc * dtau * dfd;
}

} // namespace qwg::ambiguity
