#include "iontrap/decoherence.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/sums.hpp"

namespace iontrap {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kFidelityWindow = 0.4;

std::string convention_stamp(const IonSpecies& species, double multiplier) {
    const int power = moment_wavenumber_power(species.multipole);
    return fmt::format("{}: |M|^2 = {:.6g} * hbar/(tau_s*k0^{})", to_string(species.multipole),
                       multiplier, power);
}

}  // namespace

const char* to_string(RateMode m) {
    return m == RateMode::DiscreteSum ? "discrete_sum" : "continuum_closed_form";
}

RateMode rate_mode_from_string(const std::string& s) {
    if (s == "discrete_sum" || s == "discrete") return RateMode::DiscreteSum;
    if (s == "continuum_closed_form" || s == "closed_form") return RateMode::ContinuumClosedForm;
    throw ValidationError("mode", "expected 'discrete_sum' or 'continuum_closed_form', got '" + s + "'");
}

double vibrational_prefactor(const IonSpecies& species, const TrapConfig& trap,
                             const DerivedScales& scales) {
    return scales.q2_coul * scales.moment_sq /
           (2.0 * constants::pi * constants::hbar * species.mass_kg * species.omega0 * trap.omega_t);
}

double per_ion_rate(const IonChain& chain, std::size_t i, const IonSpecies& species,
                    const TrapConfig& trap, double moment_multiplier) {
    if (chain.n_ions() != trap.n_ions) {
        throw ValidationError("n_ions", "chain and trap disagree on the number of ions");
    }
    if (i >= static_cast<std::size_t>(chain.n_ions())) {
        throw ValidationError("index", "ion index out of range");
    }
    if (chain.n_ions() == 1) return 0.0;
    const DerivedScales scales = derive_scales(species, trap, moment_multiplier);
    const int exponent = 2 * pair_exponent(species.multipole);
    return vibrational_prefactor(species, trap, scales) * sums::pair_sum_exact(chain, i, exponent) /
           std::pow(scales.d0, exponent);
}

std::vector<double> per_ion_rates(const IonChain& chain, const IonSpecies& species,
                                  const TrapConfig& trap, double moment_multiplier) {
    std::vector<double> rates(chain.n_ions());
    for (std::size_t i = 0; i < rates.size(); ++i) {
        rates[i] = per_ion_rate(chain, i, species, trap, moment_multiplier);
    }
    return rates;
}

double aggregate_tau_vib(std::span<const double> rates) {
    if (rates.empty()) throw ValidationError("rates", "need at least one rate");
    double sum_sq = 0.0;
    for (double r : rates) {
        if (!(r >= 0.0) || !std::isfinite(r)) throw ValidationError("rates", "rates must be finite and >= 0");
        sum_sq += r * r;
    }
    if (sum_sq == 0.0) return kInfinity;
    return 1.0 / std::sqrt(sum_sq);
}

FidelityCurve fidelity_curve(std::span<const double> rates, std::span<const double> times) {
    const double tau_vib = aggregate_tau_vib(rates);
    const double max_rate = *std::max_element(rates.begin(), rates.end());
    FidelityCurve curve;
    for (double t : times) {
        if (!(t >= 0.0)) throw ValidationError("times", "times must be non-negative");
        double product = 1.0;
        for (double r : rates) {
            const double c = std::cos(t * r);
            product *= c * c;
        }
        curve.product.push_back(product);
        curve.gaussian.push_back(std::isinf(tau_vib) ? 1.0 : std::exp(-(t * t) / (tau_vib * tau_vib)));
        curve.outside_window.push_back(t * max_rate > kFidelityWindow);
    }
    return curve;
}

ClosedFormRate closed_form_rate(int n_ions, const IonSpecies& species, const TrapConfig& trap,
                                const ModelOptions& options) {
    if (n_ions < 2) throw ValidationError("n_ions", "closed-form rate needs at least 2 ions");
    const DerivedScales scales = derive_scales(species, trap, options.moment_multiplier);
    const double prefactor = vibrational_prefactor(species, trap, scales);
    const int p = pair_exponent(species.multipole);
    // T_4p in d0 units; its SI value carries d0^-4p, so sqrt gives d0^-2p.
    const double total = sums::chain_total_asymptotic(n_ions, 4 * p, options.model);
    const double d0_power = std::pow(scales.d0, 2 * p);
    const double s0 = continuum::min_spacing(n_ions, options.model);

    ClosedFormRate out;
    out.full = prefactor * 2.0 * sums::zeta(2 * p) * std::sqrt(total) / d0_power;
    out.bare = std::sqrt(static_cast<double>(n_ions)) * prefactor / (std::pow(s0, 2 * p) * d0_power);
    return out;
}

double decoherence_window(double tau_rad, double tau_vib) {
    return 1.0 / (1.0 / tau_rad + 1.0 / tau_vib);
}

DecoherenceReport build_report(const IonSpecies& species, const TrapConfig& trap, RateMode mode,
                               const ModelOptions& options) {
    species.validate();
    trap.validate();
    DecoherenceReport report;
    report.mode = mode;
    report.convention = convention_stamp(species, options.moment_multiplier);
    report.tau_rad = radiative_time(species, trap.n_ions);

    if (mode == RateMode::DiscreteSum) {
        const IonChain chain = solve_equilibrium(trap.n_ions, options.solver);
        const std::vector<double> rates = per_ion_rates(chain, species, trap, options.moment_multiplier);
        report.per_ion_tau.reserve(rates.size());
        for (double r : rates) report.per_ion_tau.push_back(r > 0.0 ? 1.0 / r : kInfinity);
        report.tau_vib = aggregate_tau_vib(rates);
    } else if (trap.n_ions < 2) {
        report.tau_vib = kInfinity;
        report.tau_vib_bare = kInfinity;
    } else {
        const ClosedFormRate rate = closed_form_rate(trap.n_ions, species, trap, options);
        report.tau_vib = 1.0 / rate.full;
        report.tau_vib_bare = 1.0 / rate.bare;
    }
    report.t_d = decoherence_window(report.tau_rad, report.tau_vib);
    report.tau_vib_over_tau_s = report.tau_vib / species.tau_s;
    return report;
}

}  // namespace iontrap
