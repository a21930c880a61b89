#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qwg/errors.hpp"

namespace qwg {

using cdouble = std::complex<double>;

/// Uniform 1D grid on [z_min, z_max). Periodic modules treat z_max as the
/// wrap point, so dz = (z_max - z_min)/n and z_j = z_min + j dz.
struct Grid1D {
    double z_min = 0.0;
    double z_max = 1.0;
    std::size_t n = 0;

    Grid1D() = default;
    Grid1D(double zmin, double zmax, std::size_t npts) : z_min(zmin), z_max(zmax), n(npts) {
        if (!(zmax > zmin))
            throw config_error("Grid1D: z_max must exceed z_min");
        if (n < 2)
            throw config_error("Grid1D: need at least 2 points");
    }

    double dz() const { return (z_max - z_min) / static_cast<double>(n); }
    double length() const { return z_max - z_min; }
    double z(std::size_t j) const { return z_min + static_cast<double>(j) * dz(); }

    std::vector<double> points() const {
        std::vector<double> out(n);
        for (std::size_t j = 0; j < n; ++j)
            out[j] = z(j);
        return out;
    }

    bool power_of_two() const { return n >= 2 && (n & (n - 1)) == 0; }

    bool operator==(const Grid1D&) const = default;
};

/// Trapezoidal quadrature of samples on the grid's closed interval
/// interpretation (endpoint weights 1/2). The project-wide quadrature rule.
inline double trapezoid(const std::vector<double>& f, double dz) {
    if (f.size() < 2)
        throw config_error("trapezoid: need at least 2 samples");
    double acc = 0.5 * (f.front() + f.back());
    for (std::size_t j = 1; j + 1 < f.size(); ++j)
        acc += f[j];
    return acc * dz;
}

/// Riemann sum: the natural quadrature for periodic samples (spectrally
/// accurate for smooth periodic integrands).
inline double periodic_sum(const std::vector<double>& f, double dz) {
    double acc = 0.0;
    for (double v : f)
        acc += v;
    return acc * dz;
}

inline double norm_squared(const std::vector<cdouble>& u, double dz) {
    double acc = 0.0;
    for (const auto& v : u)
        acc += std::norm(v);
    return acc * dz;
}

/// First and second |u|^2-weighted moments: centroid and variance.
struct Moments {
    double norm = 0.0;
    double mean = 0.0;
    double variance = 0.0;
};

inline Moments density_moments(const Grid1D& g, const std::vector<cdouble>& u) {
    if (u.size() != g.n)
        throw config_error("density_moments: field size does not match grid");
    double w = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t j = 0; j < g.n; ++j) {
        const double p = std::norm(u[j]);
        const double z = g.z(j);
        w += p;
        m1 += p * z;
        m2 += p * z * z;
    }
    if (w <= 0.0)
        throw domain_error("density_moments: field has zero norm");
    Moments out;
    out.norm = w * g.dz();
    out.mean = m1 / w;
    out.variance = m2 / w - (m1 / w) * (m1 / w);
    return out;
}

} // namespace qwg
