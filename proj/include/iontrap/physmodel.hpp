#pragma once

#include <string>

namespace iontrap {

/// Multipole order of the g <-> e transition.
enum class Multipole { E1, E2 };

/// Exponent p of the 1/r^p coupling between a displaced neighbour and the
/// transition moment: 3 for a dipole, 4 for a quadrupole.
int pair_exponent(Multipole m);

/// Power of k0 in the moment-squared convention: 3 for E1, 5 for E2.
int moment_wavenumber_power(Multipole m);

const char* to_string(Multipole m);
Multipole multipole_from_string(const std::string& s);

struct IonSpecies {
    std::string name;
    double mass_kg = 0.0;
    double charge_c = 0.0;
    double omega0 = 0.0;   // optical transition, rad/s
    double tau_s = 0.0;    // spontaneous lifetime of |e>, s
    Multipole multipole = Multipole::E2;

    /// Throws ValidationError naming the first non-positive field.
    void validate() const;
};

struct TrapConfig {
    double omega_z = 0.0;  // axial secular frequency, rad/s
    double omega_t = 0.0;  // typical transverse mode frequency, rad/s
    int n_ions = 1;

    void validate() const;
};

struct DerivedScales {
    double d0 = 0.0;        // m
    double k0 = 0.0;        // 1/m
    double q2_coul = 0.0;   // J m, q^2 / (4 pi eps0)
    double moment_sq = 0.0; // J m^5 for E2, J m^3 for E1
    double moment_multiplier = 1.0;
};

/// Ba+ (137.33 u) with the 5d D5/2 -> 6s S1/2 quadrupole line at 1.7e14 Hz.
IonSpecies barium_ion(double tau_s = 50.0);

/// The 100 kHz axial / 20 MHz transverse trap with 1000 ions.
TrapConfig barium_example_trap();

/// Converts a frequency quoted as omega / 2 pi into rad/s.
double angular_from_hz(double hz);

/// Trap length scale d0 = (q^2 / m omega_z^2)^(1/3), transition wavenumber
/// k0 = omega0 / c, and the transition moment squared
/// hbar / (tau_s k0^(2l+1)) scaled by `moment_multiplier`.
DerivedScales derive_scales(const IonSpecies& species, const TrapConfig& trap,
                            double moment_multiplier = 1.0);

/// Window before the first spontaneous emission among N ions, half of
/// which are excited on average: 2 tau_s / N.
double radiative_time(const IonSpecies& species, int n_ions);

}  // namespace iontrap
