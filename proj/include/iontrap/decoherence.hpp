#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "iontrap/chain.hpp"
#include "iontrap/continuum.hpp"
#include "iontrap/physmodel.hpp"

namespace iontrap {

enum class RateMode { DiscreteSum, ContinuumClosedForm };

const char* to_string(RateMode m);
RateMode rate_mode_from_string(const std::string& s);

/// Choices that are conventions rather than physics inputs.
struct ModelOptions {
    continuum::Model model = continuum::Model::DubinFluid;
    double moment_multiplier = 1.0;
    SolverOptions solver{};
};

/// q^2 |M|^2 / (2 pi hbar m omega0 omega_t), in s^-1 m^(2p): the per-ion rate
/// is this times the pair sum of |z_i - z_j|^-2p in SI units.
double vibrational_prefactor(const IonSpecies& species, const TrapConfig& trap,
                             const DerivedScales& scales);

/// Vibrational dephasing rate 1/tau_i of ion i, with every other ion vibrating
/// independently in its zero-point transverse motion.
double per_ion_rate(const IonChain& chain, std::size_t i, const IonSpecies& species,
                    const TrapConfig& trap, double moment_multiplier = 1.0);

std::vector<double> per_ion_rates(const IonChain& chain, const IonSpecies& species,
                                  const TrapConfig& trap, double moment_multiplier = 1.0);

/// tau_vib = (sum_i r_i^2)^(-1/2); +infinity when every rate is zero.
double aggregate_tau_vib(std::span<const double> rates);

struct FidelityCurve {
    std::vector<double> product;    // prod_i cos^2(t / tau_i)
    std::vector<double> gaussian;   // exp(-t^2 / tau_vib^2)
    std::vector<bool> outside_window;  // t > 0.4 min tau_i
};

FidelityCurve fidelity_curve(std::span<const double> rates, std::span<const double> times);

struct ClosedFormRate {
    double full = 0.0;  // prefactor * 2 zeta(2p) * sqrt(T_4p)
    double bare = 0.0;  // N^(1/2) prefactor / s0^(2p)
};

/// Aggregate vibrational rate from the continuum lattice sums, N >= 2.
ClosedFormRate closed_form_rate(int n_ions, const IonSpecies& species, const TrapConfig& trap,
                                const ModelOptions& options = {});

struct DecoherenceReport {
    RateMode mode = RateMode::DiscreteSum;
    std::vector<double> per_ion_tau;  // empty in closed-form mode
    double tau_vib = 0.0;
    double tau_vib_bare = 0.0;        // closed-form mode only, otherwise 0
    double tau_rad = 0.0;
    double t_d = 0.0;
    double tau_vib_over_tau_s = 0.0;
    std::string convention;
};

/// Combined decoherence window 1/t_d = 1/tau_rad + 1/tau_vib.
double decoherence_window(double tau_rad, double tau_vib);

DecoherenceReport build_report(const IonSpecies& species, const TrapConfig& trap, RateMode mode,
                               const ModelOptions& options = {});

}  // namespace iontrap
