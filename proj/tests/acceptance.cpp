// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fmt/format.h>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "iontrap/adiabatic.hpp"
#include "iontrap/chain.hpp"
#include "iontrap/continuum.hpp"
#include "iontrap/decoherence.hpp"
#include "iontrap/scaling.hpp"
#include "iontrap/sums.hpp"

using namespace iontrap;
using continuum::Model;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double rel(double a, double b) { return std::abs(a / b - 1.0); }

TrapConfig trap_with(int n) {
    TrapConfig t = barium_example_trap();
    t.n_ions = n;
    return t;
}

Outcome trap_scale() {
    const double d0 = derive_scales(barium_ion(), barium_example_trap()).d0;
    return {rel(d0, 14e-6) <= 0.03, fmt::format("d0 = {:.4f} um (target 14 um)", d0 * 1e6)};
}

Outcome minimum_spacing() {
    const double d0 = derive_scales(barium_ion(), barium_example_trap()).d0;
    const double s0 = continuum::min_spacing(1000, Model::DubinFluid) * d0;
    return {rel(s0, 0.5e-6) <= 0.05, fmt::format("s0 = {:.4f} um (target 0.5 um)", s0 * 1e6)};
}

Outcome discrete_equilibria() {
    const double u2 = std::cbrt(0.25);
    const double u3 = std::cbrt(1.25);
    const IonChain c2 = solve_equilibrium(2);
    const IonChain c3 = solve_equilibrium(3);
    const double err = std::max({rel(-c2.position(0), u2), rel(c2.position(1), u2), rel(-c3.position(0), u3),
                                 rel(c3.position(2), u3), std::abs(c3.position(1))});
    return {err <= 1e-10, fmt::format("max relative error {:.2e}", err)};
}

Outcome continuum_convergence() {
    bool ok = true;
    std::string detail;
    for (int n : {100, 500, 1000}) {
        const IonChain c = solve_equilibrium(n);
        const double gap = c.position(n / 2) - c.position(n / 2 - 1);
        const double r = gap / continuum::min_spacing(n, Model::DubinFluid);
        ok = ok && std::abs(r - 1.0) <= 0.10;
        detail += fmt::format("N={} gap/s0={:.4f} ", n, r);
    }
    return {ok, detail};
}

Outcome lattice_shortcut() {
    bool decreasing = true;
    double prev = INFINITY;
    double at101 = 0.0;
    std::string detail;
    for (int n : {11, 51, 101, 201}) {
        const IonChain c = solve_equilibrium(n);
        const std::size_t mid = n / 2;
        const double exact = sums::pair_sum_exact(c, mid, 8);
        const double err = std::abs(sums::pair_sum_approx(local_spacing(c, mid), 8) / exact - 1.0);
        decreasing = decreasing && err < prev;
        prev = err;
        if (n == 101) at101 = err;
        detail += fmt::format("N={} err={:.3e} ", n, err);
    }
    return {decreasing && at101 <= 0.02, detail};
}

Outcome chain_totals() {
    bool ok = true;
    std::string detail;
    for (int n : {200, 500, 1000}) {
        const IonChain c = solve_equilibrium(n);
        const double r = sums::chain_total_exact(c, 16) / sums::chain_total_asymptotic(n, 16, Model::DubinFluid);
        ok = ok && std::abs(r - 1.0) <= 0.15;
        detail += fmt::format("N={} T16 ratio={:.4f} ", n, r);
    }
    return {ok, detail};
}

Outcome adiabatic_overlap() {
    using namespace adiabatic;
    const double eps = 1e-2;
    const DriveField drive(CircularDrive{eps, 1e-3});
    const double t_end = std::numbers::pi / 2 / (eps * eps);
    const double h = 1.0 / std::sqrt(2.0);
    const SpinTrajectory tr = integrate_tls(1.0, drive, {h, h}, t_end, 0.05, {100, 1e-6});
    const auto overlap = overlap_fidelity(tr, 1.0);
    double worst = 0.0;
    for (std::size_t k = 0; k < overlap.size(); ++k) {
        worst = std::max(worst, std::abs(overlap[k] - std::cos(adiabatic_phase(drive, 1.0, tr.times[k]))));
    }
    return {worst <= 3e-2 && tr.max_norm_drift <= 1e-9,
            fmt::format("max |overlap - cos Phi| = {:.3e}, norm drift = {:.2e}", worst, tr.max_norm_drift)};
}

Outcome aggregation_law() {
    bool ok = true;
    double worst = 0.0;
    for (int n : {4, 100, 1000}) {
        const double r = 0.37;
        const std::vector<double> rates(n, r);
        const double tau = aggregate_tau_vib(rates);
        const double e1 = rel(tau, 1.0 / (r * std::sqrt(n)));
        const double e2 = rel(n * r * tau, std::sqrt(n));
        worst = std::max({worst, e1, e2});
        ok = ok && e1 <= 1e-14 && e2 <= 1e-14;
    }
    return {ok, fmt::format("max relative deviation {:.1e}", worst)};
}

Outcome fidelity_approximation() {
    std::mt19937_64 rng(20261018);
    std::uniform_real_distribution<double> exponent(0.0, 1.0);
    std::vector<double> rates(100);
    for (double& r : rates) r = std::pow(10.0, exponent(rng));
    const double min_tau = 1.0 / *std::max_element(rates.begin(), rates.end());
    std::vector<double> times;
    for (int k = 0; k <= 60; ++k) times.push_back(0.3 * min_tau * k / 60);
    const FidelityCurve f = fidelity_curve(rates, times);
    double worst = 0.0;
    int product_below = 0;
    for (std::size_t k = 0; k < times.size(); ++k) {
        worst = std::max(worst, std::abs(f.product[k] - f.gaussian[k]));
        if (f.product[k] < f.gaussian[k]) ++product_below;
    }
    return {worst <= 1e-2 && product_below == 0,
            fmt::format("max |product - Gaussian| = {:.2e}; product < Gaussian at {} of {} times", worst,
                        product_below, times.size())};
}

Outcome scaling_exponents() {
    using namespace scaling;
    const TrapConfig base = barium_example_trap();
    const FixedVoltage policy{base.omega_z, base.omega_t};
    const auto grid = log_grid(1000, 10000);
    IonSpecies e1 = barium_ion();
    e1.multipole = Multipole::E1;
    const double s2 = fit_exponent(scan(policy, grid, barium_ion(), base), LogPower{-8.0 / 3.0, 0.0}).slope;
    const double s1 = fit_exponent(scan(policy, grid, e1, base), LogPower{-2.0, 0.0}).slope;
    return {std::abs(s2 - 35.0 / 6.0) <= 0.05 && std::abs(s1 - 4.5) <= 0.05,
            fmt::format("E2 slope {:.4f} (35/6), E1 slope {:.4f} (9/2)", s2, s1)};
}

Outcome conclusion_inequality() {
    const DecoherenceReport r = build_report(barium_ion(), trap_with(1000), RateMode::DiscreteSum);
    const double ratio = r.tau_vib / r.tau_rad;
    return {ratio > 1e4, fmt::format("tau_vib/tau_rad = {:.3e}, tau_vib/tau_s = {:.3e} [{}]", ratio,
                                     r.tau_vib_over_tau_s, r.convention)};
}

std::string capture(const std::string& command) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) return out;
    std::array<char, 65536> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return status == 0 ? out : std::string{};
}

Outcome determinism() {
    bool ok = true;
    std::string detail;
    for (const char* cmd : {"scales", "equilibrium", "continuum", "sums", "adiabatic", "decohere", "scaling"}) {
        const std::string line = fmt::format("{} {} --preset ba_example 2>/dev/null", IONTRAP_TOOL, cmd);
        const std::string a = capture(line);
        const std::string b = capture(line);
        const bool same = !a.empty() && a == b;
        ok = ok && same;
        detail += fmt::format("{}={} ", cmd, same ? "same" : "DIFFERENT");
    }
    return {ok, detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"trap scale d0", trap_scale},
        {"minimum spacing s0", minimum_spacing},
        {"discrete equilibria N=2,3", discrete_equilibria},
        {"continuum convergence", continuum_convergence},
        {"lattice-sum shortcut", lattice_shortcut},
        {"chain totals T16", chain_totals},
        {"adiabatic overlap", adiabatic_overlap},
        {"aggregation law", aggregation_law},
        {"fidelity approximation", fidelity_approximation},
        {"fixed-voltage scaling exponents", scaling_exponents},
        {"tau_vib >> tau_rad", conclusion_inequality},
        {"CLI determinism", determinism},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.pass) ++failed;
        fmt::print("criterion {:2}: {} | {} | {} ({:.2f} s)\n", k + 1, o.pass ? "PASS" : "FAIL", criteria[k].first,
                   o.detail, secs);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
