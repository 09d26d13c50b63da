#include <doctest.h>

#include <cmath>

#include "iontrap/chain.hpp"
#include "iontrap/continuum.hpp"
#include "iontrap/errors.hpp"

using namespace iontrap;
using doctest::Approx;

namespace {
const double kU2 = 0.629960524947437;
const double kU3 = 1.07721734501594;
}  // namespace

TEST_CASE("single ion sits at the centre") {
    const IonChain c = solve_equilibrium(1);
    REQUIRE(c.n_ions() == 1);
    CHECK(c.position(0) == 0.0);
    CHECK(c.residual() == 0.0);
    CHECK(residual_force(c) == 0.0);
}

TEST_CASE("two and three ion analytic positions") {
    const IonChain c2 = solve_equilibrium(2);
    CHECK(c2.position(0) == Approx(-kU2).epsilon(1e-10));
    CHECK(c2.position(1) == Approx(kU2).epsilon(1e-10));
    const IonChain c3 = solve_equilibrium(3);
    CHECK(c3.position(0) == Approx(-kU3).epsilon(1e-10));
    CHECK(std::abs(c3.position(1)) < 1e-14);
    CHECK(c3.position(2) == Approx(kU3).epsilon(1e-10));
}

TEST_CASE("local spacing") {
    const IonChain c2 = solve_equilibrium(2);
    CHECK(local_spacing(c2, 0) == Approx(1.25992104989487).epsilon(1e-10));
    CHECK(local_spacing(c2, 1) == Approx(1.25992104989487).epsilon(1e-10));
    CHECK(local_spacing(solve_equilibrium(3), 1) == Approx(kU3).epsilon(1e-10));
    const IonChain uniform = IonChain::from_positions({0.0, 0.7, 1.4, 2.1, 2.8});
    for (std::size_t i = 1; i < 4; ++i) CHECK(local_spacing(uniform, i) == Approx(0.7));
    CHECK_THROWS(local_spacing(uniform, 5));
    CHECK_THROWS(local_spacing(solve_equilibrium(1), 0));
}

TEST_CASE("residual certificate") {
    const double u = std::cbrt(0.25);
    CHECK(residual_force(std::vector<double>{-u, u}) <= 1e-12);
    CHECK(residual_force(std::vector<double>{-u, u + 0.1}) > 0.01);
    CHECK(residual_force(std::vector<double>{0.0}) == 0.0);
    const IonChain c = solve_equilibrium(50);
    CHECK(residual_force(c) == c.residual());
}

TEST_CASE("chains are ordered, symmetric and converged") {
    for (int n : {2, 3, 4, 5, 10, 11, 37, 100, 257}) {
        CAPTURE(n);
        const IonChain c = solve_equilibrium(n);
        REQUIRE(c.n_ions() == n);
        for (int i = 0; i + 1 < n; ++i) CHECK(c.position(i) < c.position(i + 1));
        for (int i = 0; i < n; ++i) CHECK(std::abs(c.position(i) + c.position(n - 1 - i)) <= 1e-10);
        CHECK(c.residual() <= c.certified_tolerance());
    }
}

TEST_CASE("small chains meet the default tolerance") {
    for (int n = 2; n <= 40; ++n) {
        CAPTURE(n);
        CHECK(solve_equilibrium(n).residual() <= 1e-12);
    }
}

TEST_CASE("large chains converge within the rounding floor") {
    const IonChain c = solve_equilibrium(1000);
    CHECK(c.residual() <= c.certified_tolerance());
    CHECK(c.certified_tolerance() < 1e-8);
    CHECK(c.iterations() < 50);
}

TEST_CASE("energy minimum certificate") {
    for (int n : {4, 9, 30}) {
        const IonChain c = solve_equilibrium(n);
        std::vector<double> u(c.positions().begin(), c.positions().end());
        const double e0 = potential_energy(u);
        for (int i = 0; i < n; ++i) {
            for (double d : {-1e-3, 1e-3}) {
                auto v = u;
                v[i] += d;
                CHECK(potential_energy(v) > e0);
            }
        }
    }
}

TEST_CASE("minimum gap at the centre") {
    for (int n : {4, 5, 6, 7, 20, 21, 150}) {
        const IonChain c = solve_equilibrium(n);
        const int mid = n / 2;
        const double centre_gap = c.position(mid) - c.position(mid - 1);
        for (int i = 0; i + 1 < n; ++i) CHECK(c.position(i + 1) - c.position(i) >= centre_gap - 1e-12);
    }
}

TEST_CASE("centre gap approaches the fluid model") {
    for (int n : {100, 200, 500}) {
        const IonChain c = solve_equilibrium(n);
        const double gap = c.position(n / 2) - c.position(n / 2 - 1);
        const double s0 = continuum::min_spacing(n, continuum::Model::DubinFluid);
        CHECK(std::abs(gap / s0 - 1.0) < 0.10);
    }
}

TEST_CASE("force imbalance vanishes at equilibrium") {
    const IonChain c = solve_equilibrium(12);
    for (double f : force_imbalance(c.positions())) CHECK(std::abs(f) <= 1e-12);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(solve_equilibrium(0), ValidationError);
    CHECK_THROWS_AS(solve_equilibrium(10001), ValidationError);
    CHECK_THROWS_AS(IonChain::from_positions({0.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(IonChain::from_positions({1.0, 0.0}), ValidationError);
    CHECK_THROWS_AS(IonChain::from_positions({}), ValidationError);
}

TEST_CASE("iteration budget exhaustion reports the best residual") {
    try {
        solve_equilibrium(400, {1e-12, 1});
        FAIL("expected SolverError");
    } catch (const SolverError& e) {
        CHECK(e.best_residual() > 0.0);
        CHECK(std::isfinite(e.best_residual()));
    }
}
