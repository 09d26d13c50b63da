#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "iontrap/decoherence.hpp"
#include "iontrap/physmodel.hpp"

namespace iontrap::scaling {

/// Trap voltages, hence omega_z and omega_t, held fixed as N grows.
struct FixedVoltage {
    double omega_z = 0.0;
    double omega_t = 0.0;
};

/// Central spacing s0 (metres) held fixed; omega_z is re-solved for every N,
/// omega_t is taken from the base trap.
struct FixedSpacing {
    double s0_target_m = 0.0;
};

using ScalingPolicy = std::variant<FixedVoltage, FixedSpacing>;

const char* policy_name(const ScalingPolicy& policy);

struct ScalingRow {
    int n_ions = 0;
    double omega_z = 0.0;   // rad/s
    double d0 = 0.0;        // m
    double s0 = 0.0;        // m
    double rate_vib = 0.0;  // 1/s, closed form
    double rate_rad = 0.0;  // 1/s, N / (2 tau_s)
};

/// Exponent of N claimed in the literature for this policy, with the power of
/// the accompanying logarithm. Metadata only; never used to compute rates.
struct ReferenceExponent {
    double power_of_n = 0.0;
    double power_of_log = 0.0;
};

std::optional<ReferenceExponent> reference_exponent(const ScalingPolicy& policy, Multipole m);

struct ExponentFit {
    double slope = 0.0;
    double std_error = 0.0;
    int points = 0;
};

struct ScalingSeries {
    std::vector<ScalingRow> rows;  // sorted by N
    std::optional<ReferenceExponent> reference;
};

/// Logarithmically spaced, de-duplicated integers from n_min to n_max inclusive.
std::vector<int> log_grid(int n_min, int n_max, int per_decade = 16);

/// Closed-form rates along N under the given policy. Rows are independent and
/// the result is ordered by N.
ScalingSeries scan(const ScalingPolicy& policy, std::vector<int> n_values, const IonSpecies& species,
                   const TrapConfig& base_trap, const ModelOptions& options = {});

/// omega_z for which the model's central spacing equals `s0_target_m`.
/// Throws DomainError if that would need omega_z >= omega_t.
double solve_axial_frequency(int n_ions, double s0_target_m, const IonSpecies& species,
                             double omega_t, continuum::Model model);

/// Divides the rate by (ln(scale N))^power before fitting.
struct LogPower {
    double power = 0.0;
    double scale = 0.0;  // 0 selects the Dubin constant c0
};

struct NoLogCorrection {};

using LogCorrection = std::variant<NoLogCorrection, LogPower>;

enum class Quantity { Vibrational, Radiative };

/// Least-squares slope of ln(rate) against ln N. Needs >= 4 rows spanning at
/// least one decade.
ExponentFit fit_exponent(const ScalingSeries& series, const LogCorrection& correction = NoLogCorrection{},
                         Quantity quantity = Quantity::Vibrational);

}  // namespace iontrap::scaling
