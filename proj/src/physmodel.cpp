#include "iontrap/physmodel.hpp"

#include <cmath>

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"

namespace iontrap {

namespace {

void require_positive(double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw ValidationError(field, "must be a finite positive number");
    }
}

}  // namespace

int pair_exponent(Multipole m) { return m == Multipole::E1 ? 3 : 4; }

int moment_wavenumber_power(Multipole m) { return m == Multipole::E1 ? 3 : 5; }

const char* to_string(Multipole m) { return m == Multipole::E1 ? "E1" : "E2"; }

Multipole multipole_from_string(const std::string& s) {
    if (s == "E1" || s == "e1") return Multipole::E1;
    if (s == "E2" || s == "e2") return Multipole::E2;
    throw ValidationError("multipole", "expected E1 or E2, got '" + s + "'");
}

void IonSpecies::validate() const {
    require_positive(mass_kg, "mass");
    require_positive(charge_c, "charge");
    require_positive(omega0, "omega0");
    require_positive(tau_s, "tau_s");
}

void TrapConfig::validate() const {
    require_positive(omega_z, "omega_z");
    require_positive(omega_t, "omega_t");
    if (!(omega_t > omega_z)) {
        throw ValidationError("omega_t", "transverse frequency must exceed the axial one");
    }
    if (n_ions < 1) throw ValidationError("n_ions", "must be at least 1");
}

IonSpecies barium_ion(double tau_s) {
    IonSpecies s;
    s.name = "Ba+";
    s.mass_kg = 137.33 * constants::atomic_mass_unit;
    s.charge_c = constants::elementary_charge;
    s.omega0 = angular_from_hz(1.7e14);
    s.tau_s = tau_s;
    s.multipole = Multipole::E2;
    return s;
}

TrapConfig barium_example_trap() {
    return TrapConfig{angular_from_hz(1.0e5), angular_from_hz(2.0e7), 1000};
}

double angular_from_hz(double hz) { return 2.0 * constants::pi * hz; }

DerivedScales derive_scales(const IonSpecies& species, const TrapConfig& trap,
                            double moment_multiplier) {
    species.validate();
    trap.validate();
    require_positive(moment_multiplier, "moment_multiplier");

    DerivedScales out;
    out.q2_coul = species.charge_c * species.charge_c /
                  (4.0 * constants::pi * constants::vacuum_permittivity);
    out.d0 = std::cbrt(out.q2_coul / (species.mass_kg * trap.omega_z * trap.omega_z));
    out.k0 = species.omega0 / constants::speed_of_light;
    out.moment_multiplier = moment_multiplier;
    out.moment_sq = moment_multiplier * constants::hbar /
                    (species.tau_s * std::pow(out.k0, moment_wavenumber_power(species.multipole)));
    return out;
}

double radiative_time(const IonSpecies& species, int n_ions) {
    require_positive(species.tau_s, "tau_s");
    if (n_ions < 1) throw ValidationError("n_ions", "must be at least 1");
    return 2.0 * species.tau_s / n_ions;
}

}  // namespace iontrap
