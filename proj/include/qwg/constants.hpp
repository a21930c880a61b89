#pragma once

#include <cmath>
#include <numbers>

#include "qwg/errors.hpp"

namespace qwg::constants {

/// Fundamental constants, SI units, CODATA-2018 values.
/// Immutable: everything is constexpr; solver modules normalize to
/// hbar = m = 1 and convert at the boundary (see UnitSystem below).
struct PhysicalConstants {
    double c = 2.99792458e8;            // speed of light, m/s (exact)
    double h = 6.62607015e-34;          // Planck constant, J s (exact)
    double hbar = 6.62607015e-34 / (2.0 * std::numbers::pi);
    double m_e = 9.1093837015e-31;      // electron mass, kg
    double e_charge = 1.602176634e-19;  // elementary charge, C (exact)
    double G = 6.67430e-11;             // gravitational constant, m^3/(kg s^2)
    double epsilon0 = 8.8541878128e-12; // vacuum permittivity, F/m
};

inline constexpr PhysicalConstants codata{};

/// Lowest propagating frequency of the guide associated with a rest mass:
/// f_o = m c^2 / h.
inline double compton_cutoff(double mass_kg, const PhysicalConstants& k = codata) {
    if (!(mass_kg > 0.0))
        throw domain_error("compton_cutoff: mass must be positive");
    return mass_kg * k.c * k.c / k.h;
}

/// Guide width w = c/(2 f_o) = h/(2 m c), one half the Compton wavelength.
inline double waveguide_width(double mass_kg, const PhysicalConstants& k = codata) {
    if (!(mass_kg > 0.0))
        throw domain_error("waveguide_width: mass must be positive");
    return k.h / (2.0 * mass_kg * k.c);
}

/// l_p = sqrt(hbar G / c^3)
inline double planck_length(const PhysicalConstants& k = codata) {
    return std::sqrt(k.hbar * k.G / (k.c * k.c * k.c));
}

/// m_p = sqrt(hbar c / G)
inline double planck_mass(const PhysicalConstants& k = codata) {
    return std::sqrt(k.hbar * k.c / k.G);
}

/// Unit bridge between SI and the natural system (hbar = m = 1, and c = 1
/// where it appears) anchored to a reference mass. Length unit is the
/// reduced Compton wavelength, time unit hbar/(m c^2), energy unit m c^2.
class UnitSystem {
  public:
    enum class Mode { SI, Natural };

    explicit UnitSystem(double anchor_mass_kg = codata.m_e,
                        const PhysicalConstants& k = codata)
        : mass_(anchor_mass_kg), k_(k) {
        if (!(anchor_mass_kg > 0.0))
            throw domain_error("UnitSystem: anchor mass must be positive");
    }

    double length_unit_m() const { return k_.hbar / (mass_ * k_.c); }
    double time_unit_s() const { return k_.hbar / (mass_ * k_.c * k_.c); }
    double energy_unit_J() const { return mass_ * k_.c * k_.c; }
    double velocity_unit_ms() const { return k_.c; }

    double to_natural_length(double meters) const { return meters / length_unit_m(); }
    double from_natural_length(double nat) const { return nat * length_unit_m(); }
    double to_natural_time(double seconds) const { return seconds / time_unit_s(); }
    double from_natural_time(double nat) const { return nat * time_unit_s(); }
    double to_natural_energy(double joules) const { return joules / energy_unit_J(); }
    double from_natural_energy(double nat) const { return nat * energy_unit_J(); }
    double to_natural_frequency(double hz) const { return hz * time_unit_s(); }
    double from_natural_frequency(double nat) const { return nat / time_unit_s(); }

    const PhysicalConstants& constants() const { return k_; }

  private:
    double mass_;
    PhysicalConstants k_;
};

} // namespace qwg::constants
