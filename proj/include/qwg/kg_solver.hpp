#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "qwg/errors.hpp"
#include "qwg/grid.hpp"

namespace qwg::kg {

/// Two time levels of the real scalar field, periodic in z. dt is fixed at
/// initialization because the leapfrog energy invariant depends on it.
struct RealField1D {
    Grid1D grid;
    std::vector<double> u;      // level n
    std::vector<double> u_prev; // level n-1
    double t = 0.0;
    double dt = 0.0;
};

namespace detail {

/// c = 1 everywhere in this module; f_o enters as omega_o = 2 pi f_o.
inline void apply_operator(const Grid1D& g, const std::vector<double>& u, double omega_o,
                           std::vector<double>& out) {
    const std::size_t n = g.n;
    const double inv_dz2 = 1.0 / (g.dz() * g.dz());
    out.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double up = u[j + 1 == n ? 0 : j + 1];
        const double um = u[j == 0 ? n - 1 : j - 1];
        out[j] = (up - 2.0 * u[j] + um) * inv_dz2 - omega_o * omega_o * u[j];
    }
}

} // namespace detail

/// Field with u(t=0) = profile and zero initial velocity (the matching
/// u_prev is the second-order Taylor start).
inline RealField1D rest_start(const Grid1D& g, const std::vector<double>& profile, double f_o,
                              double dt) {
    if (profile.size() != g.n)
        throw config_error("rest_start: profile size does not match grid");
    if (g.n < 16 || !g.power_of_two())
        throw config_error("rest_start: grid must be a power of two, n >= 16");
    RealField1D f;
    f.grid = g;
    f.u = profile;
    f.dt = dt;
    std::vector<double> lu;
    detail::apply_operator(g, profile, 2.0 * std::numbers::pi * f_o, lu);
    f.u_prev.resize(g.n);
    for (std::size_t j = 0; j < g.n; ++j)
        f.u_prev[j] = profile[j] + 0.5 * dt * dt * lu[j];
    return f;
}

inline void check_cfl(const Grid1D& g, double f_o, double dt) {
    if (!(dt > 0.0))
        throw config_error("evolve_kg: dt must be positive");
    if (dt > g.dz())
        throw config_error("evolve_kg: CFL violated (dt must not exceed dz/c)");
    const double omega_o = 2.0 * std::numbers::pi * f_o;
    // full leapfrog stability bound including the mass term
    if (dt * dt * (omega_o * omega_o + 4.0 / (g.dz() * g.dz())) > 4.0)
        throw config_error("evolve_kg: dt unstable for this cutoff and grid");
}

/// Leapfrog update u^{n+1} = 2u^n - u^{n-1} + dt^2 (u_zz - omega_o^2 u),
/// periodic boundaries, exactly time-reversible.
inline void evolve_kg(RealField1D& f, double f_o, double dt, std::size_t steps) {
    if (f.u.size() != f.grid.n || f.u_prev.size() != f.grid.n)
        throw config_error("evolve_kg: field not initialized");
    if (f.dt != 0.0 && f.dt != dt)
        throw config_error("evolve_kg: dt differs from the field's initialization");
    check_cfl(f.grid, f_o, dt);
    f.dt = dt;
    const double omega_o = 2.0 * std::numbers::pi * f_o;
    std::vector<double> lu(f.grid.n), next(f.grid.n);
    for (std::size_t s = 0; s < steps; ++s) {
        detail::apply_operator(f.grid, f.u, omega_o, lu);
        for (std::size_t j = 0; j < f.grid.n; ++j)
            next[j] = 2.0 * f.u[j] - f.u_prev[j] + dt * dt * lu[j];
        f.u_prev.swap(f.u);
        f.u.swap(next);
        f.t += dt;
    }
}

/// Swap the two stored levels: running evolve_kg afterwards retraces the
/// trajectory backwards (leapfrog is reversible).
inline void reverse_time(RealField1D& f) { f.u.swap(f.u_prev); }

/// The exactly conserved discrete energy of the leapfrog scheme,
/// E = 1/2 ||(u^n - u^{n-1})/dt||^2 - 1/2 <u^{n-1}, L u^n>, quadrature dz.
/// It matches the continuum functional up to an O(dt^2) constant offset.
inline double discrete_energy(const RealField1D& f, double f_o) {
    if (!(f.dt > 0.0))
        throw config_error("discrete_energy: field has no time step yet");
    const double omega_o = 2.0 * std::numbers::pi * f_o;
    std::vector<double> lu;
    detail::apply_operator(f.grid, f.u, omega_o, lu);
    double kin = 0.0, cross = 0.0;
    for (std::size_t j = 0; j < f.grid.n; ++j) {
        const double d = (f.u[j] - f.u_prev[j]) / f.dt;
        kin += d * d;
        cross += f.u_prev[j] * lu[j];
    }
    return 0.5 * (kin - cross) * f.grid.dz();
}

/// Spatial decay rate of the sub-cutoff driven field,
/// kappa = 2 pi sqrt(f_o^2 - f_drive^2) / c (angular form, c = 1).
inline double evanescent_decay_rate(double f_drive, double f_o) {
    if (!(f_drive > 0.0) || f_drive >= f_o)
        throw domain_error("evanescent_decay_rate: need 0 < f_drive < f_o");
    return 2.0 * std::numbers::pi * std::sqrt(f_o * f_o - f_drive * f_drive);
}

struct ModeFrequencyResult {
    double omega_measured = 0.0;   // angular
    double f_measured = 0.0;       // plain
    double energy_rel_drift = 0.0; // against the discrete invariant
    std::size_t steps = 0;
};

/// Standing-wave frequency measurement: evolve cos(kappa z) initial data and
/// fit the mode amplitude's zero crossings over at least n_periods. kappa
/// must be resonant with the domain. When series is given it receives the
/// (t, mode amplitude) samples.
inline ModeFrequencyResult measure_mode_frequency(const Grid1D& g, double f_o, double kappa,
                                                  double dt, double n_periods,
                                                  std::vector<std::pair<double, double>>* series =
                                                      nullptr) {
    const double omega_exact = std::sqrt(std::pow(2.0 * std::numbers::pi * f_o, 2) + kappa * kappa);
    const double t_end = n_periods * 2.0 * std::numbers::pi / omega_exact;
    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));

    std::vector<double> profile(g.n);
    for (std::size_t j = 0; j < g.n; ++j)
        profile[j] = std::cos(kappa * (g.z(j) - g.z_min));
    RealField1D f = rest_start(g, profile, f_o, dt);
    const double e0 = discrete_energy(f, f_o);

    auto mode_amp = [&]() {
        double acc = 0.0;
        for (std::size_t j = 0; j < g.n; ++j)
            acc += f.u[j] * profile[j];
        return acc * 2.0 / static_cast<double>(g.n);
    };

    double first_cross = -1.0, last_cross = -1.0;
    std::size_t crossings = 0;
    double prev = mode_amp();
    double prev_t = f.t;
    double emax_drift = 0.0;
    if (series)
        series->emplace_back(f.t, prev);
    for (std::size_t s = 0; s < steps; ++s) {
        evolve_kg(f, f_o, dt, 1);
        const double cur = mode_amp();
        if (series)
            series->emplace_back(f.t, cur);
        if ((prev > 0.0 && cur <= 0.0) || (prev < 0.0 && cur >= 0.0)) {
            const double tc = prev_t + f.dt * prev / (prev - cur);
            if (first_cross < 0.0)
                first_cross = tc;
            else {
                last_cross = tc;
                ++crossings;
            }
        }
        prev = cur;
        prev_t = f.t;
        if ((s + 1) % 512 == 0) {
            const double e = discrete_energy(f, f_o);
            emax_drift = std::max(emax_drift, std::abs(e - e0) / std::abs(e0));
        }
    }
    emax_drift = std::max(emax_drift, std::abs(discrete_energy(f, f_o) - e0) / std::abs(e0));

    if (crossings < 4 || last_cross <= first_cross)
        throw numerical_abort("measure_mode_frequency: too few zero crossings");
    ModeFrequencyResult out;
    out.omega_measured = std::numbers::pi * static_cast<double>(crossings) / (last_cross - first_cross);
    out.f_measured = out.omega_measured / (2.0 * std::numbers::pi);
    out.energy_rel_drift = emax_drift;
    out.steps = steps;
    return out;
}

struct DecayFitResult {
    double kappa_fitted = 0.0;
    double kappa_exact = 0.0;
    double rel_error = 0.0;
};

/// Driven-boundary evanescence experiment: a ramped source oscillating below
/// cutoff at the left edge, a quadratic damping sponge on the right, and an
/// exponential fit of the steady-state amplitude envelope in between.
inline DecayFitResult driven_decay_experiment(double f_drive, double f_o, double domain_length = 5.0,
                                              std::size_t n = 512, double cfl = 0.5,
                                              double n_settle_periods = 150.0) {
    const double kappa = evanescent_decay_rate(f_drive, f_o);
    Grid1D g(0.0, domain_length, n);
    const double dt = cfl * g.dz();
    const double omega_d = 2.0 * std::numbers::pi * f_drive;
    const double period = 2.0 * std::numbers::pi / omega_d;
    const double t_settle = n_settle_periods * period;
    const double sponge_start = 0.7 * domain_length;

    RealField1D f;
    f.grid = g;
    f.u.assign(n, 0.0);
    f.u_prev.assign(n, 0.0);
    f.dt = dt;

    std::vector<double> sponge(n, 1.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double z = g.z(j);
        if (z > sponge_start) {
            const double x = (z - sponge_start) / (domain_length - sponge_start);
            sponge[j] = std::exp(-8.0 * dt * x * x);
        }
    }

    // smooth switch-on keeps the drive narrowband; a hard source would leak
    // above-cutoff transients that contaminate the deep tail
    const double t_ramp = 30.0 * period;
    const std::size_t src_cells = 4;
    auto run_until = [&](double t_stop, auto&& per_step) {
        while (f.t < t_stop) {
            evolve_kg(f, f_o, dt, 1);
            const double x = std::min(1.0, f.t / t_ramp);
            const double ramp = 0.5 * (1.0 - std::cos(std::numbers::pi * x));
            for (std::size_t j = 0; j < src_cells; ++j)
                f.u[j] = ramp * std::sin(omega_d * f.t);
            for (std::size_t j = 0; j < n; ++j) {
                f.u[j] *= sponge[j];
                f.u_prev[j] *= sponge[j];
            }
            per_step();
        }
    };
    run_until(t_settle, [] {});

    // envelope over two drive periods
    std::vector<double> env(n, 0.0);
    run_until(f.t + 2.0 * period, [&] {
        for (std::size_t j = 0; j < n; ++j)
            env[j] = std::max(env[j], std::abs(f.u[j]));
    });

    // fit ln(env) vs z in the clean window: past the source cells, inside
    // the region that still sits well above the residual transient floor
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    std::size_t count = 0;
    for (std::size_t j = src_cells + 4; j < n; ++j) {
        const double z = g.z(j);
        if (z > 0.8 * sponge_start || env[j] < 1e-4 * env[src_cells + 4])
            break;
        const double y = std::log(env[j]);
        sx += z, sy += y, sxx += z * z, sxy += z * y;
        ++count;
    }
    if (count < 8)
        throw numerical_abort("driven_decay_experiment: too few fit points");
    const double denom = static_cast<double>(count) * sxx - sx * sx;
    const double slope = (static_cast<double>(count) * sxy - sx * sy) / denom;

    DecayFitResult out;
    out.kappa_fitted = -slope;
    out.kappa_exact = kappa;
    out.rel_error = std::abs(out.kappa_fitted - kappa) / kappa;
    return out;
}

} // namespace qwg::kg
