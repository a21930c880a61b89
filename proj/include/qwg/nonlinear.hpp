#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qwg/errors.hpp"
#include "qwg/fft.hpp"
#include "qwg/grid.hpp"
#include "qwg/potential.hpp"

namespace qwg::nonlinear {

struct ComplexField1D {
    Grid1D grid;
    std::vector<cdouble> u;
    double t = 0.0;
};

enum class Equation { Nls, GrossPitaevskii, NonlinearQ };

struct ConservedSet {
    double norm = 0.0;
    double momentum = 0.0;
    double energy = 0.0;
};

/// Exact moving-breather solution of i u_t + u_zz + 2|u|^2 u = 0:
/// u = a exp[i v z / 2 + i (a^2 - v^2/4) t] sech[a (z - v t - z0)].
inline cdouble breather_exact(double a, double v, double z0, double z, double t) {
    const double phase = 0.5 * v * z + (a * a - 0.25 * v * v) * t;
    const double env = a / std::cosh(a * (z - v * t - z0));
    return env * cdouble(std::cos(phase), std::sin(phase));
}

inline ComplexField1D initial_breather(const Grid1D& g, double a, double v, double z0) {
    ComplexField1D f;
    f.grid = g;
    f.u.resize(g.n);
    for (std::size_t j = 0; j < g.n; ++j)
        f.u[j] = breather_exact(a, v, z0, g.z(j), 0.0);
    return f;
}

/// sech envelope with plane-wave phase, the natural initial datum for the
/// hbar = m = 1 Schroedinger-type evolvers: psi = sech(a(z-z0)) e^{i v z}.
inline ComplexField1D initial_sech_packet(const Grid1D& g, double a, double v, double z0) {
    ComplexField1D f;
    f.grid = g;
    f.u.resize(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double z = g.z(j);
        f.u[j] = (1.0 / std::cosh(a * (z - z0))) * cdouble(std::cos(v * z), std::sin(v * z));
    }
    return f;
}

inline ComplexField1D initial_gaussian_packet(const Grid1D& g, double x0, double sigma, double k0) {
    ComplexField1D f;
    f.grid = g;
    f.u.resize(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        const double z = g.z(j);
        const double env = std::exp(-0.25 * (z - x0) * (z - x0) / (sigma * sigma));
        f.u[j] = env * cdouble(std::cos(k0 * z), std::sin(k0 * z));
    }
    return f;
}

struct EvolveOptions {
    double norm_guard = 1e-6;     // relative norm drift that aborts the run
    std::size_t check_every = 200;
    bool boundary_guard = true;   // require |u| < 1e-10 max at the wrap seam
    double eps_rel = 1e-8;        // modulus floor (NonlinearQ only)
};

namespace detail {

inline void require_periodic_fit(const ComplexField1D& f, const EvolveOptions& opt,
                                 const char* who) {
    if (!f.grid.power_of_two())
        throw config_error(std::string(who) + ": grid size must be a power of two");
    if (f.u.size() != f.grid.n)
        throw config_error(std::string(who) + ": field size does not match grid");
    // width precondition on fresh initial data; continuation legs own their
    // accumulated radiation floor
    if (opt.boundary_guard && f.t == 0.0) {
        double umax = 0.0;
        for (const auto& v : f.u)
            umax = std::max(umax, std::abs(v));
        if (umax > 0.0) {
            const double edge = std::max(std::abs(f.u.front()), std::abs(f.u.back()));
            if (edge > 1e-10 * umax)
                throw config_error(std::string(who) +
                                   ": localized data touches the periodic boundary "
                                   "(widen the domain or disable the boundary guard)");
        }
    }
}

} // namespace detail

/// Exact evolution of the free linear equation i hbar psi_t = -(hbar^2/2m)
/// psi_zz via one spectral propagator application. Oracle for the evolvers.
inline ComplexField1D free_evolve(const ComplexField1D& f0, double T, double mass = 1.0,
                                  double hbar = 1.0) {
    ComplexField1D f = f0;
    SpectralWorkspace ws(f.grid);
    ws.plan().forward(f.u);
    const auto& k = ws.wavenumbers();
    for (std::size_t j = 0; j < f.u.size(); ++j) {
        const double phase = -hbar * k[j] * k[j] * T / (2.0 * mass);
        f.u[j] *= cdouble(std::cos(phase), std::sin(phase));
    }
    ws.plan().inverse(f.u);
    f.t += T;
    return f;
}

/// Strang split-step for i u_t + u_zz + 2|u|^2 u = 0: exact nonlinear phase
/// rotation around an exact spectral kinetic step.
inline ComplexField1D evolve_nls(const ComplexField1D& u0, double dt, std::size_t steps,
                                 const EvolveOptions& opt = {}) {
    detail::require_periodic_fit(u0, opt, "evolve_nls");
    if (!(dt > 0.0))
        throw config_error("evolve_nls: dt must be positive");
    ComplexField1D f = u0;
    SpectralWorkspace ws(f.grid);
    const auto& k = ws.wavenumbers();
    std::vector<cdouble> kin(f.grid.n);
    for (std::size_t j = 0; j < kin.size(); ++j) {
        const double phase = -k[j] * k[j] * dt;
        kin[j] = {std::cos(phase), std::sin(phase)};
    }
    const double n0 = norm_squared(f.u, f.grid.dz());

    auto half_nonlinear = [&](std::vector<cdouble>& u) {
        for (auto& v : u) {
            const double phase = 2.0 * std::norm(v) * 0.5 * dt;
            v *= cdouble(std::cos(phase), std::sin(phase));
        }
    };

    for (std::size_t s = 0; s < steps; ++s) {
        half_nonlinear(f.u);
        ws.plan().forward(f.u);
        for (std::size_t j = 0; j < f.u.size(); ++j)
            f.u[j] *= kin[j];
        ws.plan().inverse(f.u);
        half_nonlinear(f.u);
        f.t += dt;
        if ((s + 1) % opt.check_every == 0 || s + 1 == steps) {
            const double now = norm_squared(f.u, f.grid.dz());
            if (n0 > 0.0 && std::abs(now - n0) > opt.norm_guard * n0)
                throw numerical_abort("evolve_nls: norm drift " + std::to_string((now - n0) / n0) +
                                      " exceeded guard at t=" + std::to_string(f.t));
        }
    }
    return f;
}

/// Strang split-step for
/// i hbar phi_t = -(hbar^2/2m) phi_zz + V phi + rest_energy phi + g |phi|^2 phi.
/// rest_energy is the mc^2 offset, active when include_rest is set; it is a
/// pure gauge exp(-i mc^2 t/hbar) on the solution.
inline ComplexField1D evolve_gp(const ComplexField1D& phi0, const PotentialSpec& V, double g,
                                bool include_rest, double dt, std::size_t steps,
                                double mass = 1.0, double hbar = 1.0, double rest_energy = 1.0,
                                const EvolveOptions& opt = {}) {
    detail::require_periodic_fit(phi0, opt, "evolve_gp");
    if (!(dt > 0.0))
        throw config_error("evolve_gp: dt must be positive");
    ComplexField1D f = phi0;
    SpectralWorkspace ws(f.grid);
    const auto& k = ws.wavenumbers();
    std::vector<cdouble> kin(f.grid.n);
    for (std::size_t j = 0; j < kin.size(); ++j) {
        const double phase = -hbar * k[j] * k[j] * dt / (2.0 * mass);
        kin[j] = {std::cos(phase), std::sin(phase)};
    }
    const double offset = include_rest ? rest_energy : 0.0;
    std::vector<double> vsamp = V.sample(f.grid);
    const double n0 = norm_squared(f.u, f.grid.dz());

    auto half_potential = [&](std::vector<cdouble>& u) {
        for (std::size_t j = 0; j < u.size(); ++j) {
            const double pot = vsamp[j] + offset + g * std::norm(u[j]);
            const double phase = -pot * 0.5 * dt / hbar;
            u[j] *= cdouble(std::cos(phase), std::sin(phase));
        }
    };

    for (std::size_t s = 0; s < steps; ++s) {
        half_potential(f.u);
        ws.plan().forward(f.u);
        for (std::size_t j = 0; j < f.u.size(); ++j)
            f.u[j] *= kin[j];
        ws.plan().inverse(f.u);
        half_potential(f.u);
        f.t += dt;
        if ((s + 1) % opt.check_every == 0 || s + 1 == steps) {
            const double now = norm_squared(f.u, f.grid.dz());
            if (n0 > 0.0 && std::abs(now - n0) > opt.norm_guard * n0)
                throw numerical_abort("evolve_gp: norm drift exceeded guard at t=" +
                                      std::to_string(f.t));
        }
    }
    return f;
}

namespace detail {

/// Right-hand side of the modulus-coupled equation
/// i hbar psi_t = -(hbar^2/2m) psi_zz + V psi - Q[|psi|] psi,
/// Q[R] = -(hbar^2/2m) R'' / max(R, eps). psi_zz is spectral; R'' uses the
/// periodic five-point stencil. Finite differences are essential here: their
/// error scales with the local modulus, so the ratio R''/R stays accurate in
/// exponential tails, whereas a spectral derivative's absolute error floor,
/// divided by a near-floor modulus, acts as a large spurious potential whose
/// feedback grows like k_max^2.
class NlqRhs {
  public:
    NlqRhs(const Grid1D& g, const PotentialSpec& V, double mass, double hbar, double eps_rel)
        : ws_(g), vsamp_(V.sample(g)), mass_(mass), hbar_(hbar), eps_rel_(eps_rel),
          modulus_(g.n), d2r_(g.n), buf_(g.n) {}

    void operator()(const std::vector<cdouble>& psi, std::vector<cdouble>& out) {
        const std::size_t n = psi.size();
        double rmax = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            modulus_[j] = std::abs(psi[j]);
            rmax = std::max(rmax, modulus_[j]);
        }
        const double floor = eps_rel_ * rmax;

        const double inv12dz2 = 1.0 / (12.0 * ws_.grid().dz() * ws_.grid().dz());
        for (std::size_t j = 0; j < n; ++j) {
            const double rm2 = modulus_[(j + n - 2) % n];
            const double rm1 = modulus_[(j + n - 1) % n];
            const double rp1 = modulus_[(j + 1) % n];
            const double rp2 = modulus_[(j + 2) % n];
            d2r_[j] = (-rm2 + 16.0 * rm1 - 30.0 * modulus_[j] + 16.0 * rp1 - rp2) * inv12dz2;
        }

        for (std::size_t j = 0; j < n; ++j)
            buf_[j] = psi[j];
        ws_.plan().forward(buf_);
        const auto& k = ws_.wavenumbers();
        for (std::size_t j = 0; j < n; ++j)
            buf_[j] *= -k[j] * k[j];
        ws_.plan().inverse(buf_);

        const double half = 0.5 * hbar_ / mass_; // hbar^2/2m, divided by hbar
        for (std::size_t j = 0; j < n; ++j) {
            const double q = -half * d2r_[j] / std::max({modulus_[j], floor, 1e-300});
            // psi_t = (i/hbar) [ (hbar^2/2m) psi_zz - V psi + Q psi ]
            out[j] = cdouble(0.0, 1.0) * (half * buf_[j] + (q - vsamp_[j] / hbar_) * psi[j]);
        }
    }

    const std::vector<double>& modulus() const { return modulus_; }
    double eps_rel() const { return eps_rel_; }

  private:
    SpectralWorkspace ws_;
    std::vector<double> vsamp_;
    double mass_, hbar_, eps_rel_;
    std::vector<double> modulus_, d2r_;
    std::vector<cdouble> buf_;
};

inline void check_support_holes(const std::vector<double>& R, double eps_rel, double t) {
    double rmax = 0.0;
    for (double v : R)
        rmax = std::max(rmax, v);
    const double floor = eps_rel * rmax;
    std::size_t first = R.size(), last = 0;
    for (std::size_t j = 0; j < R.size(); ++j) {
        if (R[j] >= floor) {
            first = std::min(first, j);
            last = std::max(last, j);
        }
    }
    if (first >= last)
        throw numerical_abort("evolve_nlq: support collapsed at t=" + std::to_string(t));
    std::size_t holes = 0;
    for (std::size_t j = first; j <= last; ++j)
        if (R[j] < floor)
            ++holes;
    if (10 * holes > (last - first + 1))
        throw numerical_abort("evolve_nlq: singular regime (modulus underflow on >10% of the "
                              "active support) at t=" + std::to_string(t));
}

} // namespace detail

/// Classical RK4 on the full right-hand side of the Q-cancelling equation.
/// Stability requires dt <= 2*sqrt(2) * (2m/hbar) / k_max^2; the constructor
/// refuses steps beyond it. Norm drift and support holes abort the run.
inline ComplexField1D evolve_nlq(const ComplexField1D& psi0, const PotentialSpec& V, double dt,
                                 std::size_t steps, double mass = 1.0, double hbar = 1.0,
                                 const EvolveOptions& opt = {}) {
    detail::require_periodic_fit(psi0, opt, "evolve_nlq");
    if (!(dt > 0.0))
        throw config_error("evolve_nlq: dt must be positive");
    const double kmax = std::numbers::pi / psi0.grid.dz();
    const double lambda_max = hbar * kmax * kmax / (2.0 * mass);
    if (dt * lambda_max > 2.0 * std::numbers::sqrt2)
        throw config_error("evolve_nlq: dt violates the RK4 stability bound for this grid");

    ComplexField1D f = psi0;
    detail::NlqRhs rhs(f.grid, V, mass, hbar, opt.eps_rel);
    const std::size_t n = f.grid.n;
    std::vector<cdouble> k1(n), k2(n), k3(n), k4(n), tmp(n);
    const double n0 = norm_squared(f.u, f.grid.dz());

    for (std::size_t s = 0; s < steps; ++s) {
        rhs(f.u, k1);
        for (std::size_t j = 0; j < n; ++j)
            tmp[j] = f.u[j] + 0.5 * dt * k1[j];
        rhs(tmp, k2);
        for (std::size_t j = 0; j < n; ++j)
            tmp[j] = f.u[j] + 0.5 * dt * k2[j];
        rhs(tmp, k3);
        for (std::size_t j = 0; j < n; ++j)
            tmp[j] = f.u[j] + dt * k3[j];
        rhs(tmp, k4);
        for (std::size_t j = 0; j < n; ++j)
            f.u[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        f.t += dt;

        if ((s + 1) % opt.check_every == 0 || s + 1 == steps) {
            const double now = norm_squared(f.u, f.grid.dz());
            if (n0 > 0.0 && std::abs(now - n0) > opt.norm_guard * n0)
                throw numerical_abort("evolve_nlq: norm drift exceeded guard at t=" +
                                      std::to_string(f.t));
            std::vector<double> R(n);
            for (std::size_t j = 0; j < n; ++j)
                R[j] = std::abs(f.u[j]);
            if (n0 > 0.0)
                detail::check_support_holes(R, opt.eps_rel, f.t);
        }
    }
    return f;
}

/// Norm, momentum and the equation-specific Hamiltonian, spectral quadrature.
inline ConservedSet conserved_set(const ComplexField1D& f, Equation eq,
                                  const PotentialSpec& V = PotentialSpec::free(), double g = 0.0,
                                  double mass = 1.0, double hbar = 1.0, double rest_energy = 0.0) {
    SpectralWorkspace ws(f.grid);
    const double dz = f.grid.dz();
    ConservedSet out;
    out.norm = norm_squared(f.u, dz);

    std::vector<cdouble> du(f.grid.n);
    ws.first_derivative(f.u, du);
    double mom = 0.0, grad2 = 0.0;
    for (std::size_t j = 0; j < f.u.size(); ++j) {
        mom += std::imag(std::conj(f.u[j]) * du[j]);
        grad2 += std::norm(du[j]);
    }
    out.momentum = mom * dz;
    grad2 *= dz;

    switch (eq) {
    case Equation::Nls: {
        double quart = 0.0;
        for (const auto& v : f.u)
            quart += std::norm(v) * std::norm(v);
        out.energy = grad2 - quart * dz;
        break;
    }
    case Equation::GrossPitaevskii: {
        double pot = 0.0, quart = 0.0;
        for (std::size_t j = 0; j < f.u.size(); ++j) {
            pot += (V(f.grid.z(j)) + rest_energy) * std::norm(f.u[j]);
            quart += std::norm(f.u[j]) * std::norm(f.u[j]);
        }
        out.energy = hbar * hbar / (2.0 * mass) * grad2 + pot * dz + 0.5 * g * quart * dz;
        break;
    }
    case Equation::NonlinearQ: {
        std::vector<double> R(f.u.size());
        for (std::size_t j = 0; j < f.u.size(); ++j)
            R[j] = std::abs(f.u[j]);
        std::vector<cdouble> rb(R.begin(), R.end());
        std::vector<cdouble> dr(R.size());
        ws.first_derivative(rb, dr);
        double rgrad2 = 0.0, pot = 0.0;
        for (std::size_t j = 0; j < R.size(); ++j) {
            rgrad2 += std::norm(dr[j]);
            pot += V(f.grid.z(j)) * std::norm(f.u[j]);
        }
        // transport energy: (hbar^2/2m)(|psi_z|^2 - R_z^2) + V R^2
        out.energy = hbar * hbar / (2.0 * mass) * (grad2 - rgrad2 * dz) + pot * dz;
        break;
    }
    }
    return out;
}

} // namespace qwg::nonlinear
