#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "qwg/errors.hpp"
#include "qwg/grid.hpp"
#include "qwg/potential.hpp"

namespace qwg::stationary {

/// Local wavenumber of the stationary equation. In the allowed region the
/// value is k = sqrt(2m(E-V))/hbar; below the potential it is the evanescent
/// decay rate kappa = sqrt(2m(V-E))/hbar with the flag set.
struct WkbWavenumber {
    double value = 0.0;
    bool evanescent = false;
};

inline WkbWavenumber wkb_wavenumber(double E, double V, double mass = 1.0, double hbar = 1.0) {
    if (!(mass > 0.0) || !(hbar > 0.0))
        throw domain_error("wkb_wavenumber: mass and hbar must be positive");
    const double q = 2.0 * mass * (E - V) / (hbar * hbar);
    if (q >= 0.0)
        return {std::sqrt(q), false};
    return {std::sqrt(-q), true};
}

inline double group_velocity(double E, double V, double mass = 1.0) {
    if (!(mass > 0.0))
        throw domain_error("group_velocity: mass must be positive");
    if (E < V)
        throw domain_error("group_velocity: E must not be below V");
    return std::sqrt(2.0 * (E - V) / mass);
}

/// Scattering amplitudes and flux-weighted probabilities for a
/// piecewise-constant potential at energy E.
struct ScatteringResult {
    double energy = 0.0;
    double R_prob = 0.0;
    double T_prob = 0.0;
    cdouble r{0.0, 0.0};
    cdouble t{0.0, 0.0};
    cdouble transfer_det{1.0, 0.0}; // det of the amplitude transfer product
    double k_in = 0.0;              // lead wavenumbers
    double k_out = 0.0;

    /// Determinant in the flux-normalized convention; unit modulus for any
    /// lossless segment product.
    cdouble flux_det() const { return transfer_det * (k_out / k_in); }
};

namespace detail {

inline cdouble region_k(double E, double V, double mass, double hbar) {
    const double q = 2.0 * mass * (E - V) / (hbar * hbar);
    if (q > 0.0)
        return {std::sqrt(q), 0.0};
    return {0.0, std::sqrt(-q)};
}

} // namespace detail

/// Transfer-matrix solution with unit amplitude incident from the left.
/// Convention: the first and last segments act as semi-infinite leads whose
/// potential extends to -inf / +inf; interior segments form the barrier
/// structure. E must propagate in both leads.
inline ScatteringResult solve_scattering(const PotentialSpec& potential, double E,
                                         double mass = 1.0, double hbar = 1.0) {
    std::vector<PotentialSegment> segs;
    if (potential.is_free())
        segs = {{-1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    else
        segs = potential.segments();
    if (segs.size() < 2)
        throw config_error("solve_scattering: need at least two segments (leads)");
    if (E <= segs.front().V || E <= segs.back().V)
        throw domain_error("solve_scattering: E must exceed the potential in both leads");

    const std::size_t nreg = segs.size();
    std::vector<cdouble> k(nreg);
    for (std::size_t j = 0; j < nreg; ++j) {
        k[j] = detail::region_k(E, segs[j].V, mass, hbar);
        if (std::abs(k[j]) < 1e-300)
            throw domain_error("solve_scattering: grazing energy (E equals a segment potential)");
    }

    // Amplitudes referenced to each region's left interface. M maps lead-0
    // amplitudes at the first interface to last-lead amplitudes at the final
    // interface: interface step, then in-segment propagation, repeated.
    cdouble m00 = 1.0, m01 = 0.0, m10 = 0.0, m11 = 1.0;
    auto lmul = [&](cdouble a00, cdouble a01, cdouble a10, cdouble a11) {
        const cdouble n00 = a00 * m00 + a01 * m10;
        const cdouble n01 = a00 * m01 + a01 * m11;
        const cdouble n10 = a10 * m00 + a11 * m10;
        const cdouble n11 = a10 * m01 + a11 * m11;
        m00 = n00, m01 = n01, m10 = n10, m11 = n11;
    };

    for (std::size_t j = 0; j + 1 < nreg; ++j) {
        if (j > 0) {
            const double d = segs[j].z_end - segs[j].z_start;
            const cdouble arg = cdouble(0.0, 1.0) * k[j] * d;
            if (-arg.real() > 600.0 || arg.real() > 600.0)
                throw config_error("solve_scattering: evanescent segment too opaque for transfer matrices");
            lmul(std::exp(arg), 0.0, 0.0, std::exp(-arg));
        }
        const cdouble ratio = k[j] / k[j + 1];
        lmul(0.5 * (1.0 + ratio), 0.5 * (1.0 - ratio), 0.5 * (1.0 - ratio), 0.5 * (1.0 + ratio));
    }

    ScatteringResult out;
    out.energy = E;
    out.r = -m10 / m11;
    out.t = m00 + m01 * out.r;
    out.R_prob = std::norm(out.r);
    out.T_prob = (k.back().real() / k.front().real()) * std::norm(out.t);
    out.transfer_det = m00 * m11 - m01 * m10;
    out.k_in = k.front().real();
    out.k_out = k.back().real();
    return out;
}

/// Scattering wavefunction sampled on a grid, reconstructed from the
/// per-region amplitudes of the transfer solution (unit incidence).
inline std::vector<cdouble> scattering_wavefunction(const PotentialSpec& potential, double E,
                                                    const Grid1D& g, double mass = 1.0,
                                                    double hbar = 1.0) {
    const auto sol = solve_scattering(potential, E, mass, hbar);
    std::vector<PotentialSegment> segs;
    if (potential.is_free())
        segs = {{-1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}};
    else
        segs = potential.segments();
    const std::size_t nreg = segs.size();
    std::vector<cdouble> k(nreg);
    for (std::size_t j = 0; j < nreg; ++j)
        k[j] = detail::region_k(E, segs[j].V, mass, hbar);

    // forward recurrence for (A_j, B_j) referenced at each region's left
    // interface; lead 0 is referenced at the first interface
    std::vector<cdouble> A(nreg), B(nreg);
    A[0] = 1.0;
    B[0] = sol.r;
    for (std::size_t j = 0; j + 1 < nreg; ++j) {
        cdouble a = A[j], b = B[j];
        if (j > 0) {
            const double d = segs[j].z_end - segs[j].z_start;
            const cdouble arg = cdouble(0.0, 1.0) * k[j] * d;
            a *= std::exp(arg);
            b *= std::exp(-arg);
        }
        const cdouble ratio = k[j] / k[j + 1];
        A[j + 1] = 0.5 * (1.0 + ratio) * a + 0.5 * (1.0 - ratio) * b;
        B[j + 1] = 0.5 * (1.0 - ratio) * a + 0.5 * (1.0 + ratio) * b;
    }

    std::vector<cdouble> psi(g.n);
    for (std::size_t p = 0; p < g.n; ++p) {
        const double z = g.z(p);
        std::size_t j = 0;
        while (j + 1 < nreg && z >= segs[j].z_end)
            ++j;
        // reference point: left interface of region j (first interface for the left lead)
        const double ref = (j == 0) ? segs[0].z_end : segs[j].z_start;
        const cdouble ph = cdouble(0.0, 1.0) * k[j] * (z - ref);
        psi[p] = A[j] * std::exp(ph) + B[j] * std::exp(-ph);
    }
    return psi;
}

/// Born density |psi|^2 / integral(|psi|^2). Uniform-weight quadrature,
/// which is the trapezoid rule for the grid's half-open periodic extension;
/// the returned samples integrate to 1 under the same rule exactly.
inline std::vector<double> born_density(const Grid1D& g, const std::vector<cdouble>& psi) {
    if (psi.size() != g.n)
        throw config_error("born_density: field size does not match grid");
    std::vector<double> d(psi.size());
    for (std::size_t j = 0; j < psi.size(); ++j)
        d[j] = std::norm(psi[j]);
    const double total = periodic_sum(d, g.dz());
    if (!(total > 0.0))
        throw domain_error("born_density: field has zero norm");
    for (auto& v : d)
        v /= total;
    return d;
}

/// Eigenpairs of the Dirichlet-boundary stationary problem on [z_min, z_max].
struct BoundStates {
    std::vector<double> energies;              // Richardson-extrapolated
    std::vector<std::vector<double>> states;   // includes endpoint zeros
    std::vector<double> z;                     // closed-interval sample points
    std::size_t n_bound = 0;                   // states below the edge potential
    bool all_confined = true;                  // n_bound covers every returned state
};

namespace detail {

/// Count of eigenvalues of the symmetric tridiagonal (d, e) strictly below x
/// via the Sturm/LDL pivot recurrence.
inline std::size_t sturm_count(const std::vector<double>& d, double e, double x) {
    std::size_t cnt = 0;
    double q = 1.0;
    const double e2 = e * e;
    for (std::size_t j = 0; j < d.size(); ++j) {
        q = (j == 0) ? d[0] - x : d[j] - x - e2 / q;
        if (q == 0.0)
            q = 1e-300;
        if (q < 0.0)
            ++cnt;
    }
    return cnt;
}

inline double bisect_eigenvalue(const std::vector<double>& d, double e, std::size_t index,
                                double lo, double hi) {
    for (int it = 0; it < 120 && hi - lo > 1e-15 * (std::abs(lo) + std::abs(hi) + 1.0); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(d, e, mid) > index)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

/// One inverse-iteration solve (A - sigma I) y = x for tridiagonal A with
/// constant off-diagonal, partial-pivoting LU.
inline void tridiag_shifted_solve(const std::vector<double>& d, double e, double sigma,
                                  std::vector<double>& y) {
    const std::size_t m = d.size();
    std::vector<double> a(m), b(m, e), c(m, e), rhs = y;
    for (std::size_t j = 0; j < m; ++j)
        a[j] = d[j] - sigma;
    // forward elimination with row swaps (b: super-diag, c: sub-diag, f: 2nd super)
    std::vector<double> f(m, 0.0);
    for (std::size_t j = 0; j + 1 < m; ++j) {
        double sub = c[j];
        if (std::abs(sub) > std::abs(a[j])) {
            std::swap(a[j], sub); // now sub holds old a[j]
            std::swap(b[j], a[j + 1]);
            std::swap(f[j], b[j + 1]);
            std::swap(rhs[j], rhs[j + 1]);
        }
        if (a[j] == 0.0)
            a[j] = 1e-300;
        const double mfac = sub / a[j];
        a[j + 1] -= mfac * b[j];
        b[j + 1] -= mfac * f[j];
        rhs[j + 1] -= mfac * rhs[j];
    }
    if (a[m - 1] == 0.0)
        a[m - 1] = 1e-300;
    y[m - 1] = rhs[m - 1] / a[m - 1];
    if (m >= 2)
        y[m - 2] = (rhs[m - 2] - b[m - 2] * y[m - 1]) / a[m - 2];
    for (std::size_t jj = m; jj-- > 2;) {
        const std::size_t j = jj - 2;
        y[j] = (rhs[j] - b[j] * y[j + 1] - f[j] * y[j + 2]) / a[j];
    }
}

struct DirichletSolve {
    std::vector<double> energies;
    std::vector<std::vector<double>> vectors; // interior points only
};

inline DirichletSolve solve_dirichlet_fd2(const PotentialSpec& V, double z_min, double z_max,
                                          std::size_t n_points, std::size_t n_states,
                                          double mass, double hbar) {
    const std::size_t m = n_points - 2; // interior unknowns
    const double dz = (z_max - z_min) / static_cast<double>(n_points - 1);
    const double kin = hbar * hbar / (2.0 * mass * dz * dz);
    std::vector<double> d(m);
    for (std::size_t j = 0; j < m; ++j)
        d[j] = 2.0 * kin + V(z_min + dz * static_cast<double>(j + 1));
    const double e = -kin;

    const double dmin = *std::min_element(d.begin(), d.end());
    const double dmax = *std::max_element(d.begin(), d.end());
    double lo = dmin - 2.0 * std::abs(e) - 1.0;
    double hi = dmax + 2.0 * std::abs(e) + 1.0;

    DirichletSolve out;
    for (std::size_t i = 0; i < n_states; ++i) {
        const double lambda = bisect_eigenvalue(d, e, i, lo, hi);
        out.energies.push_back(lambda);
        std::vector<double> y(m);
        for (std::size_t j = 0; j < m; ++j)
            y[j] = std::cos(static_cast<double>((i + 1) * (j + 1))) + 0.5; // deterministic start
        const double sigma = lambda * (1.0 + 1e-12) + 1e-14;
        for (int pass = 0; pass < 3; ++pass) {
            tridiag_shifted_solve(d, e, sigma, y);
            double nrm = 0.0;
            for (double v : y)
                nrm += v * v;
            nrm = std::sqrt(nrm);
            for (auto& v : y)
                v /= nrm;
        }
        out.vectors.push_back(std::move(y));
    }
    return out;
}

} // namespace detail

/// Lowest eigenpairs by symmetric tridiagonal FD discretization with Sturm
/// bisection, plus one Richardson step against a coarser grid for the
/// reported energies (smooth or flat potentials). Eigenfunctions are
/// trapezoid-normalized; hard walls sit exactly at z_min and z_max.
inline BoundStates solve_bound_states(const PotentialSpec& V, std::size_t n_states,
                                      double z_min, double z_max, std::size_t n_points = 2048,
                                      double mass = 1.0, double hbar = 1.0) {
    if (n_states < 1)
        throw domain_error("solve_bound_states: need n_states >= 1");
    if (n_points < 16)
        throw config_error("solve_bound_states: grid too small");
    if (!(z_max > z_min))
        throw config_error("solve_bound_states: bad interval");
    if (n_states + 2 > n_points)
        throw config_error("solve_bound_states: more states than grid supports");

    const auto fine = detail::solve_dirichlet_fd2(V, z_min, z_max, n_points, n_states, mass, hbar);
    const std::size_t n_coarse = (n_points - 1) / 2 + 1;
    const auto coarse =
        detail::solve_dirichlet_fd2(V, z_min, z_max, n_coarse, n_states, mass, hbar);

    const double h1 = (z_max - z_min) / static_cast<double>(n_points - 1);
    const double h2 = (z_max - z_min) / static_cast<double>(n_coarse - 1);

    BoundStates out;
    out.z.resize(n_points);
    for (std::size_t j = 0; j < n_points; ++j)
        out.z[j] = z_min + h1 * static_cast<double>(j);

    const double dz = h1;
    for (std::size_t i = 0; i < n_states; ++i) {
        const double c2 = (fine.energies[i] - coarse.energies[i]) / (h1 * h1 - h2 * h2);
        out.energies.push_back(fine.energies[i] - c2 * h1 * h1);

        std::vector<double> full(n_points, 0.0);
        for (std::size_t j = 0; j + 2 < n_points; ++j)
            full[j + 1] = fine.vectors[i][j];
        std::vector<double> sq(n_points);
        for (std::size_t j = 0; j < n_points; ++j)
            sq[j] = full[j] * full[j];
        const double nrm = std::sqrt(trapezoid(sq, dz));
        for (auto& v : full)
            v /= nrm;
        // sign convention: first interior extremum positive
        for (double v : full) {
            if (std::abs(v) > 1e-8) {
                if (v < 0.0)
                    for (auto& w : full)
                        w = -w;
                break;
            }
        }
        out.states.push_back(std::move(full));
    }

    // A state is "bound" when it sits below the edge potential; if the
    // potential never rises toward the edges the box itself confines and
    // every Dirichlet state counts.
    const double v_edge = std::min(V(z_min), V(z_max));
    double v_min = V(z_min);
    for (std::size_t j = 0; j < n_points; ++j)
        v_min = std::min(v_min, V(out.z[j]));
    if (v_edge > v_min + 1e-12 * (1.0 + std::abs(v_edge))) {
        out.n_bound = 0;
        for (double En : out.energies)
            if (En < v_edge)
                ++out.n_bound;
        out.all_confined = out.n_bound == out.energies.size();
    } else {
        out.n_bound = out.energies.size();
        out.all_confined = true;
    }
    return out;
}

} // namespace qwg::stationary
