#include "iontrap/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"

namespace iontrap::cli {

namespace {

namespace pt = boost::property_tree;

constexpr std::string_view kBaExample = R"(; Ba+ quadrupole qubit in a 100 kHz / 20 MHz linear trap.
[species]
name = Ba+
mass_amu = 137.33
charge_e = 1
f0_hz = 1.7e14
tau_s_s = 50
multipole = E2

[trap]
fz_hz = 1e5
ft_hz = 2e7
n_ions = 1000

[model]
continuum = dubin
qsq_multiplier = 1
)";

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s{
        {"species", {"name", "mass_amu", "charge_e", "f0_hz", "tau_s_s", "multipole"}},
        {"trap", {"fz_hz", "ft_hz", "n_ions"}},
        {"model", {"continuum", "qsq_multiplier", "solver_tolerance", "solver_max_iterations"}},
        {"adiabatic", {"eps_over_omega0", "rotation_over_omega0", "omega0_t_end", "dt_omega0", "stride"}},
        {"sums", {"exponent"}},
        {"continuum", {"samples"}},
        {"decohere", {"mode"}},
        {"scaling", {"policy", "n_min", "n_max", "per_decade", "s0_target_m"}},
    };
    return s;
}

const std::set<std::string> kRequiredSections{"species", "trap"};
const std::map<std::string, std::vector<std::string>> kRequiredKeys{
    {"species", {"mass_amu", "charge_e", "f0_hz", "tau_s_s", "multipole"}},
    {"trap", {"fz_hz", "ft_hz", "n_ions"}},
};

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    bool has(const std::string& section, const std::string& key) const {
        const auto sec = tree_.get_child_optional(pt::ptree::path_type(section, '\0'));
        return sec && sec->get_child_optional(pt::ptree::path_type(key, '\0'));
    }

    std::string text(const std::string& section, const std::string& key) const {
        return tree_.get_child(pt::ptree::path_type(section, '\0'))
            .get_child(pt::ptree::path_type(key, '\0'))
            .data();
    }

    double number(const std::string& section, const std::string& key, double fallback) const {
        if (!has(section, key)) return fallback;
        const std::string raw = text(section, key);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(raw, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != raw.size() || !std::isfinite(v)) {
            throw ValidationError(key, "expected a finite number, got '" + raw + "'");
        }
        return v;
    }

    int integer(const std::string& section, const std::string& key, int fallback) const {
        if (!has(section, key)) return fallback;
        const double v = number(section, key, 0.0);
        if (v != std::floor(v) || std::abs(v) > 2e9) {
            throw ValidationError(key, "expected an integer, got '" + text(section, key) + "'");
        }
        return static_cast<int>(v);
    }

    std::string string(const std::string& section, const std::string& key, const std::string& fallback) const {
        return has(section, key) ? text(section, key) : fallback;
    }

private:
    const pt::ptree& tree_;
};

void require_positive(double v, const char* key) {
    if (!(v > 0.0)) throw ValidationError(key, "must be positive");
}

pt::ptree read_document(std::string_view text) {
    pt::ptree tree;
    std::istringstream in{std::string(text)};
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message(),
                          static_cast<int>(e.line()));
    }
    return tree;
}

void check_schema(const pt::ptree& tree) {
    for (const auto& [section, body] : tree) {
        const auto it = schema().find(section);
        if (it == schema().end()) {
            if (body.empty() && !body.data().empty()) {
                throw ConfigError("key '" + section + "' appears outside any [section]");
            }
            throw ConfigError("unknown section [" + section + "]");
        }
        for (const auto& [key, value] : body) {
            if (!it->second.contains(key)) {
                throw ValidationError(key, "unknown key in [" + section + "]");
            }
        }
    }
    std::string missing;
    for (const auto& section : kRequiredSections) {
        if (!tree.get_child_optional(pt::ptree::path_type(section, '\0'))) {
            missing += (missing.empty() ? "" : ", ") + ("[" + section + "]");
        }
    }
    if (!missing.empty()) throw ConfigError("missing required section(s): " + missing);
    for (const auto& [section, keys] : kRequiredKeys) {
        const auto& body = tree.get_child(pt::ptree::path_type(section, '\0'));
        for (const auto& key : keys) {
            if (!body.get_child_optional(pt::ptree::path_type(key, '\0'))) {
                throw ValidationError(key, "required key missing from [" + section + "]");
            }
        }
    }
}

void apply_overrides(pt::ptree& tree, const Overrides& overrides) {
    for (const auto& [path, value] : overrides) {
        const auto dot = path.find('.');
        if (dot == std::string::npos || dot == 0 || dot + 1 == path.size()) {
            throw ConfigError("override '" + path + "' must have the form section.key");
        }
        const std::string section = path.substr(0, dot);
        const std::string key = path.substr(dot + 1);
        auto sec = tree.get_child_optional(pt::ptree::path_type(section, '\0'));
        if (!sec) {
            tree.push_back({section, pt::ptree{}});
            sec = tree.get_child_optional(pt::ptree::path_type(section, '\0'));
        }
        sec->put(pt::ptree::path_type(key, '\0'), value);
    }
}

}  // namespace

std::string_view preset_text(std::string_view name) {
    if (name == "ba_example") return kBaExample;
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

RunConfig parse_config(std::string_view text, const Overrides& overrides) {
    pt::ptree tree = read_document(text);
    apply_overrides(tree, overrides);
    check_schema(tree);
    const Reader r(tree);

    RunConfig cfg;
    const double mass_amu = r.number("species", "mass_amu", 0.0);
    const double charge_e = r.number("species", "charge_e", 0.0);
    const double f0_hz = r.number("species", "f0_hz", 0.0);
    const double tau_s = r.number("species", "tau_s_s", 0.0);
    require_positive(mass_amu, "mass_amu");
    require_positive(charge_e, "charge_e");
    require_positive(f0_hz, "f0_hz");
    require_positive(tau_s, "tau_s_s");
    cfg.species.name = r.string("species", "name", "ion");
    cfg.species.mass_kg = mass_amu * constants::atomic_mass_unit;
    cfg.species.charge_c = charge_e * constants::elementary_charge;
    cfg.species.omega0 = angular_from_hz(f0_hz);
    cfg.species.tau_s = tau_s;
    cfg.species.multipole = multipole_from_string(r.text("species", "multipole"));

    const double fz = r.number("trap", "fz_hz", 0.0);
    const double ft = r.number("trap", "ft_hz", 0.0);
    require_positive(fz, "fz_hz");
    require_positive(ft, "ft_hz");
    if (!(ft > fz)) throw ValidationError("ft_hz", "transverse frequency must exceed fz_hz");
    cfg.trap.omega_z = angular_from_hz(fz);
    cfg.trap.omega_t = angular_from_hz(ft);
    cfg.trap.n_ions = r.integer("trap", "n_ions", 0);
    if (cfg.trap.n_ions < 1) throw ValidationError("n_ions", "must be at least 1");

    cfg.model.model = continuum::model_from_string(r.string("model", "continuum", "dubin"));
    cfg.model.moment_multiplier = r.number("model", "qsq_multiplier", 1.0);
    require_positive(cfg.model.moment_multiplier, "qsq_multiplier");
    cfg.model.solver.tolerance = r.number("model", "solver_tolerance", cfg.model.solver.tolerance);
    require_positive(cfg.model.solver.tolerance, "solver_tolerance");
    cfg.model.solver.max_iterations = r.integer("model", "solver_max_iterations", cfg.model.solver.max_iterations);
    if (cfg.model.solver.max_iterations < 1) throw ValidationError("solver_max_iterations", "must be positive");

    auto& ad = cfg.adiabatic;
    ad.eps_over_omega0 = r.number("adiabatic", "eps_over_omega0", ad.eps_over_omega0);
    ad.rotation_over_omega0 = r.number("adiabatic", "rotation_over_omega0", ad.rotation_over_omega0);
    ad.omega0_t_end = r.number("adiabatic", "omega0_t_end", ad.omega0_t_end);
    ad.dt_omega0 = r.number("adiabatic", "dt_omega0", ad.dt_omega0);
    ad.stride = r.integer("adiabatic", "stride", ad.stride);
    if (ad.eps_over_omega0 < 0.0) throw ValidationError("eps_over_omega0", "must be non-negative");
    if (ad.omega0_t_end < 0.0) throw ValidationError("omega0_t_end", "must be non-negative");
    if (ad.omega0_t_end == 0.0 && ad.eps_over_omega0 == 0.0) {
        throw ValidationError("omega0_t_end", "must be given when eps_over_omega0 = 0");
    }
    require_positive(ad.dt_omega0, "dt_omega0");
    if (ad.stride < 1) throw ValidationError("stride", "must be at least 1");

    cfg.sum_exponent = r.integer("sums", "exponent", cfg.sum_exponent);
    if (cfg.sum_exponent < 2) throw ValidationError("exponent", "must be at least 2");
    cfg.continuum_samples = r.integer("continuum", "samples", cfg.continuum_samples);
    if (cfg.continuum_samples < 2) throw ValidationError("samples", "must be at least 2");
    cfg.decohere_mode = rate_mode_from_string(r.string("decohere", "mode", "discrete_sum"));

    auto& sc = cfg.scaling;
    sc.policy = r.string("scaling", "policy", sc.policy);
    if (sc.policy != "fixed_voltage" && sc.policy != "fixed_spacing") {
        throw ValidationError("policy", "expected fixed_voltage or fixed_spacing, got '" + sc.policy + "'");
    }
    sc.n_min = r.integer("scaling", "n_min", sc.n_min);
    sc.n_max = r.integer("scaling", "n_max", sc.n_max);
    sc.per_decade = r.integer("scaling", "per_decade", sc.per_decade);
    sc.s0_target_m = r.number("scaling", "s0_target_m", sc.s0_target_m);
    if (sc.n_min < 2) throw ValidationError("n_min", "must be at least 2");
    if (sc.n_max <= sc.n_min) throw ValidationError("n_max", "must exceed n_min");
    if (sc.per_decade < 1) throw ValidationError("per_decade", "must be positive");
    if (sc.s0_target_m < 0.0) throw ValidationError("s0_target_m", "must be non-negative");
    return cfg;
}

}  // namespace iontrap::cli
