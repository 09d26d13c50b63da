#include <doctest.h>

#include <cmath>

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/physmodel.hpp"

using namespace iontrap;
using doctest::Approx;

TEST_CASE("barium trap length scale") {
    const DerivedScales s = derive_scales(barium_ion(), barium_example_trap());
    CHECK(s.d0 == Approx(1.36845119481305e-5).epsilon(1e-10));
    CHECK(std::abs(s.d0 / 14e-6 - 1.0) < 0.03);
    CHECK(s.q2_coul == Approx(2.30707755234174e-28).epsilon(1e-10));
}

TEST_CASE("d0 cube identity") {
    const IonSpecies ba = barium_ion();
    const TrapConfig trap = barium_example_trap();
    const DerivedScales s = derive_scales(ba, trap);
    CHECK(std::pow(s.d0, 3) * ba.mass_kg * trap.omega_z * trap.omega_z == Approx(s.q2_coul).epsilon(1e-13));
}

TEST_CASE("transition wavenumber and moment") {
    const DerivedScales s = derive_scales(barium_ion(), barium_example_trap());
    CHECK(s.k0 == Approx(3562936.53731786).epsilon(1e-12));
    CHECK(s.k0 == Approx(barium_ion().omega0 / constants::speed_of_light).epsilon(1e-15));
    CHECK(s.moment_sq == Approx(3.67337886080807e-69).epsilon(1e-10));
}

TEST_CASE("eightfold omega_z^2 halves d0") {
    const IonSpecies ba = barium_ion();
    TrapConfig trap = barium_example_trap();
    const double d0 = derive_scales(ba, trap).d0;
    trap.omega_z *= std::sqrt(8.0);
    CHECK(derive_scales(ba, trap).d0 == Approx(d0 / 2).epsilon(1e-13));
}

TEST_CASE("mass and frequency rescaling leaves d0 fixed") {
    for (double lambda : {0.25, 2.0, 7.5}) {
        IonSpecies ba = barium_ion();
        TrapConfig trap = barium_example_trap();
        const double d0 = derive_scales(ba, trap).d0;
        ba.mass_kg *= lambda;
        trap.omega_z /= std::sqrt(lambda);
        trap.omega_t = std::max(trap.omega_t, 2 * trap.omega_z);
        CHECK(derive_scales(ba, trap).d0 == Approx(d0).epsilon(1e-13));
    }
}

TEST_CASE("moment decreases in tau_s and omega0") {
    const TrapConfig trap = barium_example_trap();
    for (Multipole m : {Multipole::E1, Multipole::E2}) {
        IonSpecies a = barium_ion(30.0);
        a.multipole = m;
        IonSpecies b = a;
        b.tau_s = 70.0;
        CHECK(derive_scales(b, trap).moment_sq < derive_scales(a, trap).moment_sq);
        IonSpecies c = a;
        c.omega0 *= 1.5;
        CHECK(derive_scales(c, trap).moment_sq < derive_scales(a, trap).moment_sq);
    }
}

TEST_CASE("E1 dipole convention") {
    IonSpecies ba = barium_ion();
    ba.multipole = Multipole::E1;
    const DerivedScales s = derive_scales(ba, barium_example_trap());
    CHECK(s.moment_sq == Approx(constants::hbar / (ba.tau_s * std::pow(s.k0, 3))).epsilon(1e-14));
    CHECK(pair_exponent(Multipole::E1) == 3);
    CHECK(pair_exponent(Multipole::E2) == 4);
}

TEST_CASE("moment multiplier scales linearly") {
    const auto a = derive_scales(barium_ion(), barium_example_trap(), 1.0);
    const auto b = derive_scales(barium_ion(), barium_example_trap(), 3.0);
    CHECK(b.moment_sq == Approx(3.0 * a.moment_sq).epsilon(1e-15));
}

TEST_CASE("outputs finite and positive") {
    const auto s = derive_scales(barium_ion(), barium_example_trap());
    for (double v : {s.d0, s.k0, s.q2_coul, s.moment_sq}) {
        CHECK(std::isfinite(v));
        CHECK(v > 0.0);
    }
}

TEST_CASE("radiative time") {
    const IonSpecies ba = barium_ion(50.0);
    CHECK(radiative_time(ba, 1) == doctest::Approx(100.0));
    CHECK(radiative_time(ba, 1000) == doctest::Approx(0.1));
    CHECK(radiative_time(ba, 400) == doctest::Approx(2 * radiative_time(ba, 800)));
    CHECK_THROWS_AS(radiative_time(ba, 0), ValidationError);
}

TEST_CASE("validation names the field") {
    const TrapConfig trap = barium_example_trap();
    const auto field_of = [&](IonSpecies s) -> std::string {
        try {
            derive_scales(s, trap);
        } catch (const ValidationError& e) {
            return e.field();
        }
        return "";
    };
    IonSpecies s = barium_ion();
    s.mass_kg = -1;
    CHECK(field_of(s) == "mass");
    s = barium_ion();
    s.charge_c = 0;
    CHECK(field_of(s) == "charge");
    s = barium_ion();
    s.omega0 = 0;
    CHECK(field_of(s) == "omega0");
    s = barium_ion();
    s.tau_s = -3;
    CHECK(field_of(s) == "tau_s");
}

TEST_CASE("trap validation") {
    TrapConfig t = barium_example_trap();
    t.omega_t = t.omega_z;
    CHECK_THROWS_AS(t.validate(), ValidationError);
    t = barium_example_trap();
    t.n_ions = 0;
    CHECK_THROWS_AS(t.validate(), ValidationError);
    t = barium_example_trap();
    t.omega_z = -1;
    CHECK_THROWS_AS(t.validate(), ValidationError);
}

TEST_CASE("multipole strings") {
    CHECK(multipole_from_string("E1") == Multipole::E1);
    CHECK(multipole_from_string("E2") == Multipole::E2);
    CHECK(std::string(to_string(Multipole::E2)) == "E2");
    CHECK_THROWS_AS(multipole_from_string("M1"), ValidationError);
}

TEST_CASE("hertz conversion") {
    CHECK(angular_from_hz(1.0) == Approx(2 * constants::pi));
}
