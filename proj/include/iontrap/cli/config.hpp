#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iontrap/decoherence.hpp"
#include "iontrap/physmodel.hpp"

namespace iontrap::cli {

/// Malformed config text or a missing section. `line()` is 0 when the error
/// is not tied to one line.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& what, int line = 0) : std::runtime_error(what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct AdiabaticSettings {
    double eps_over_omega0 = 1e-2;
    double rotation_over_omega0 = 1e-3;
    double omega0_t_end = 0.0;  // 0: run until Phi = pi
    double dt_omega0 = 0.05;
    int stride = 100;
};

struct ScalingSettings {
    std::string policy = "fixed_voltage";
    int n_min = 1000;
    int n_max = 10000;
    int per_decade = 16;
    double s0_target_m = 0.0;  // 0: s0 of the base trap at n_min
};

struct RunConfig {
    IonSpecies species;
    TrapConfig trap;
    ModelOptions model;
    AdiabaticSettings adiabatic;
    ScalingSettings scaling;
    int sum_exponent = 8;
    int continuum_samples = 39;
    RateMode decohere_mode = RateMode::DiscreteSum;
};

/// ("section.key", value) pairs applied on top of the document.
using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Parses an INI document ([section] headers, `key = value`, `;` comments).
/// [species] and [trap] are required; unknown sections or keys are rejected.
RunConfig parse_config(std::string_view text, const Overrides& overrides = {});

/// Bundled config text; "ba_example" is the only preset.
std::string_view preset_text(std::string_view name);

}  // namespace iontrap::cli
