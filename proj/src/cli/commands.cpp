#include "iontrap/cli/commands.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "iontrap/adiabatic.hpp"
#include "iontrap/chain.hpp"
#include "iontrap/cli/csv.hpp"
#include "iontrap/continuum.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/scaling.hpp"
#include "iontrap/sums.hpp"

namespace iontrap::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void emit_scales(const RunConfig& cfg, CsvWriter& csv) {
    const DerivedScales s = derive_scales(cfg.species, cfg.trap, cfg.model.moment_multiplier);
    csv.header({"quantity", "value", "unit"});
    csv.values("d0", s.d0, "m");
    csv.values("k0", s.k0, "1/m");
    csv.values("q2_coul", s.q2_coul, "J m");
    csv.values("moment_sq", s.moment_sq, cfg.species.multipole == Multipole::E2 ? "J m^5" : "J m^3");
    csv.values("tau_rad", radiative_time(cfg.species, cfg.trap.n_ions), "s");
    if (cfg.trap.n_ions >= 2) {
        const auto model = cfg.model.model;
        csv.values("L", continuum::chain_length(cfg.trap.n_ions, model) * s.d0, "m");
        csv.values("s0", continuum::min_spacing(cfg.trap.n_ions, model) * s.d0, "m");
    }
}

void emit_equilibrium(const RunConfig& cfg, CsvWriter& csv) {
    const DerivedScales s = derive_scales(cfg.species, cfg.trap, cfg.model.moment_multiplier);
    const IonChain chain = solve_equilibrium(cfg.trap.n_ions, cfg.model.solver);
    csv.header({"index", "u_dimensionless", "z_meters", "local_spacing_dimensionless"});
    for (int i = 0; i < chain.n_ions(); ++i) {
        const double u = chain.position(i);
        const double spacing = chain.n_ions() >= 2 ? local_spacing(chain, i) : std::nan("");
        csv.values(i + 1, u, u * s.d0, spacing);
    }
    csv.next_block();
    csv.header({"residual", "certified_tolerance", "iterations"});
    csv.values(chain.residual(), chain.certified_tolerance(), chain.iterations());
}

void emit_continuum(const RunConfig& cfg, CsvWriter& csv) {
    using continuum::Model;
    const int n = cfg.trap.n_ions;
    csv.header({"model", "L_over_d0", "s0_over_d0"});
    for (Model m : {Model::NearestNeighbor, Model::DubinFluid}) {
        csv.values(continuum::to_string(m), continuum::chain_length(n, m), continuum::min_spacing(n, m));
    }
    csv.next_block();
    csv.header({"z_over_L", "s_over_d0_nn", "s_over_d0_dubin"});
    const int samples = cfg.continuum_samples;
    for (int k = 0; k < samples; ++k) {
        const double x = -0.95 + 1.9 * k / (samples - 1);
        csv.values(x, continuum::spacing_profile(x, n, Model::NearestNeighbor),
                   continuum::spacing_profile(x, n, Model::DubinFluid));
    }
}

void emit_sums(const RunConfig& cfg, CsvWriter& csv) {
    const int n = cfg.sum_exponent;
    const IonChain chain = solve_equilibrium(cfg.trap.n_ions, cfg.model.solver);
    if (chain.n_ions() < 2) throw ValidationError("n_ions", "lattice sums need at least 2 ions");
    csv.header({"i", "u_i", "S_n_exact", "S_n_approx", "rel_err"});
    for (int i = 0; i < chain.n_ions(); ++i) {
        const double exact = sums::pair_sum_exact(chain, i, n);
        const double approx = sums::pair_sum_approx(local_spacing(chain, i), n);
        csv.values(i + 1, chain.position(i), exact, approx, (approx - exact) / exact);
    }
    csv.next_block();
    csv.header({"n", "T_n_exact", "T_n_continuum", "T_n_asymptotic"});
    csv.values(n, sums::chain_total_exact(chain, n),
               sums::chain_total_continuum(chain.n_ions(), n, cfg.model.model),
               sums::chain_total_asymptotic(chain.n_ions(), n, cfg.model.model));
}

void emit_adiabatic(const RunConfig& cfg, CsvWriter& csv, std::ostream& log) {
    using namespace adiabatic;
    const auto& ad = cfg.adiabatic;
    // Dimensionless time: omega0 = 1.
    const DriveField drive(CircularDrive{ad.eps_over_omega0, ad.rotation_over_omega0});
    for (const auto& w : drive.regime_warnings(1.0)) log << "warning: " << w << '\n';
    const double t_end = ad.omega0_t_end > 0.0
                             ? ad.omega0_t_end
                             : std::numbers::pi / (ad.eps_over_omega0 * ad.eps_over_omega0);
    const double h = 1.0 / std::sqrt(2.0);
    const SpinTrajectory traj = integrate_tls(1.0, drive, {h, h}, t_end, ad.dt_omega0, {ad.stride, 1e-6});
    const std::vector<double> overlap = overlap_fidelity(traj, 1.0);

    csv.header({"omega0_t", "re_overlap", "cos_phi", "abs_error"});
    double worst = 0.0;
    for (std::size_t k = 0; k < overlap.size(); ++k) {
        const double cos_phi = std::cos(adiabatic_phase(drive, 1.0, traj.times[k]));
        const double err = std::abs(overlap[k] - cos_phi);
        worst = std::max(worst, err);
        csv.values(traj.times[k], overlap[k], cos_phi, err);
    }
    csv.next_block();
    csv.header({"eps_over_omega0", "rotation_over_omega0", "max_abs_error", "max_norm_drift"});
    csv.values(ad.eps_over_omega0, ad.rotation_over_omega0, worst, traj.max_norm_drift);
}

void emit_decohere(const RunConfig& cfg, CsvWriter& csv) {
    const DecoherenceReport report = build_report(cfg.species, cfg.trap, cfg.decohere_mode, cfg.model);
    csv.header({"i", "tau_i_seconds"});
    for (std::size_t i = 0; i < report.per_ion_tau.size(); ++i) {
        csv.values(i + 1, report.per_ion_tau[i]);
    }
    csv.next_block();
    csv.header({"tau_vib", "tau_rad", "t_d", "mode", "Qsq_convention", "tau_vib_over_tau_s",
                "tau_vib_over_tau_rad", "tau_vib_bare"});
    csv.values(report.tau_vib, report.tau_rad, report.t_d, to_string(report.mode), report.convention,
               report.tau_vib_over_tau_s, report.tau_vib / report.tau_rad,
               report.mode == RateMode::ContinuumClosedForm ? report.tau_vib_bare : std::nan(""));
}

void emit_scaling(const RunConfig& cfg, CsvWriter& csv) {
    using namespace scaling;
    const auto& sc = cfg.scaling;
    ScalingPolicy policy;
    if (sc.policy == "fixed_voltage") {
        policy = FixedVoltage{cfg.trap.omega_z, cfg.trap.omega_t};
    } else {
        double target = sc.s0_target_m;
        if (target == 0.0) {
            const TrapConfig at_min{cfg.trap.omega_z, cfg.trap.omega_t, sc.n_min};
            target = continuum::min_spacing(sc.n_min, cfg.model.model) * derive_scales(cfg.species, at_min).d0;
        }
        policy = FixedSpacing{target};
    }
    const ScalingSeries series =
        scan(policy, log_grid(sc.n_min, sc.n_max, sc.per_decade), cfg.species, cfg.trap, cfg.model);

    csv.header({"N", "omega_z_hz", "d0_m", "s0_m", "rate_vib_hz", "rate_rad_hz"});
    for (const auto& row : series.rows) {
        csv.values(row.n_ions, row.omega_z / kTwoPi, row.d0, row.s0, row.rate_vib, row.rate_rad);
    }
    csv.next_block();
    csv.header({"quantity", "log_power", "slope", "std_error", "reference_slope"});
    const bool fittable = series.rows.size() >= 4 && series.rows.back().n_ions >= 10 * series.rows.front().n_ions;
    if (!fittable) return;
    const double ref_slope = series.reference ? series.reference->power_of_n : std::nan("");
    const ExponentFit raw = fit_exponent(series);
    csv.values("rate_vib", 0.0, raw.slope, raw.std_error, ref_slope);
    if (series.reference) {
        const double power = series.reference->power_of_log;
        const ExponentFit corrected = fit_exponent(series, LogPower{power, 0.0});
        csv.values("rate_vib", power, corrected.slope, corrected.std_error, ref_slope);
    }
    const ExponentFit rad = fit_exponent(series, NoLogCorrection{}, Quantity::Radiative);
    csv.values("rate_rad", 0.0, rad.slope, rad.std_error, 1.0);
}

}  // namespace

Command command_from_string(std::string_view name) {
    if (name == "scales") return Command::Scales;
    if (name == "equilibrium") return Command::Equilibrium;
    if (name == "continuum") return Command::Continuum;
    if (name == "sums") return Command::Sums;
    if (name == "adiabatic") return Command::Adiabatic;
    if (name == "decohere") return Command::Decohere;
    if (name == "scaling") return Command::Scaling;
    throw ValidationError("command", "unknown command '" + std::string(name) + "'");
}

const char* to_string(Command c) {
    switch (c) {
        case Command::Scales: return "scales";
        case Command::Equilibrium: return "equilibrium";
        case Command::Continuum: return "continuum";
        case Command::Sums: return "sums";
        case Command::Adiabatic: return "adiabatic";
        case Command::Decohere: return "decohere";
        case Command::Scaling: return "scaling";
    }
    return "?";
}

void emit(Command command, const RunConfig& config, std::ostream& out, std::ostream& log) {
    CsvWriter csv(out);
    switch (command) {
        case Command::Scales: emit_scales(config, csv); break;
        case Command::Equilibrium: emit_equilibrium(config, csv); break;
        case Command::Continuum: emit_continuum(config, csv); break;
        case Command::Sums: emit_sums(config, csv); break;
        case Command::Adiabatic: emit_adiabatic(config, csv, log); break;
        case Command::Decohere: emit_decohere(config, csv); break;
        case Command::Scaling: emit_scaling(config, csv); break;
    }
}

int run(Command command, const RunConfig& config, const std::optional<std::string>& out_path,
        std::ostream& out, std::ostream& err) {
    std::ostringstream buffer;
    try {
        emit(command, config, buffer, err);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const SolverError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const AccuracyError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    } catch (const DomainError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    if (!out_path) {
        out << buffer.str();
        return out ? kOk : kIo;
    }
    std::ofstream file(*out_path, std::ios::binary | std::ios::trunc);
    if (!file) {
        err << "error: cannot open '" << *out_path << "' for writing\n";
        return kIo;
    }
    file << buffer.str();
    file.close();
    if (!file) {
        err << "error: failed writing '" << *out_path << "'\n";
        return kIo;
    }
    return kOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Decoherence times of a linear ion-trap quantum register"};
    app.require_subcommand(1);

    std::string config_path;
    std::string preset;
    std::optional<std::string> out_path;
    std::vector<std::string> sets;
    std::optional<int> n_ions;
    std::optional<std::string> multipole;
    std::optional<double> eps, rotation, t_end;
    std::optional<std::string> policy;
    std::optional<int> n_min, n_max;

    const auto add_common = [&](CLI::App* sub) {
        auto* cfg = sub->add_option("--config", config_path, "INI config file");
        auto* pre = sub->add_option("--preset", preset, "bundled config (ba_example)");
        cfg->excludes(pre);
        sub->add_option("--out", out_path, "output CSV path (default: stdout)");
        sub->add_option("--set", sets, "override, section.key=value (repeatable)");
        sub->add_option("--n-ions", n_ions, "override trap.n_ions");
        sub->add_option("--multipole", multipole, "override species.multipole (E1 or E2)");
    };

    std::vector<CLI::App*> subs;
    for (const char* name : {"scales", "equilibrium", "continuum", "sums", "adiabatic", "decohere", "scaling"}) {
        subs.push_back(app.add_subcommand(name));
        add_common(subs.back());
    }
    subs[4]->add_option("--eps", eps, "drive amplitude eps/omega0");
    subs[4]->add_option("--rotation", rotation, "drive rotation rate Omega/omega0");
    subs[4]->add_option("--omega0-t-end", t_end, "integration end, in units of 1/omega0");
    subs[6]->add_option("--policy", policy, "fixed_voltage or fixed_spacing");
    subs[6]->add_option("--n-min", n_min, "smallest N");
    subs[6]->add_option("--n-max", n_max, "largest N");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, e2;
        const int code = app.exit(e, o, e2);
        out << o.str();
        err << e2.str();
        return code == 0 ? kOk : kValidation;
    }

    Command command{};
    for (auto* sub : subs) {
        if (sub->parsed()) command = command_from_string(sub->get_name());
    }

    Overrides overrides;
    for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            err << "error: --set expects section.key=value, got '" << s << "'\n";
            return kValidation;
        }
        overrides.emplace_back(s.substr(0, eq), s.substr(eq + 1));
    }
    const auto put = [&](const char* path, const auto& v) {
        if (v) overrides.emplace_back(path, fmt::format("{}", *v));
    };
    put("trap.n_ions", n_ions);
    put("species.multipole", multipole);
    put("adiabatic.eps_over_omega0", eps);
    put("adiabatic.rotation_over_omega0", rotation);
    put("adiabatic.omega0_t_end", t_end);
    put("scaling.policy", policy);
    put("scaling.n_min", n_min);
    put("scaling.n_max", n_max);

    RunConfig config;
    try {
        std::string text;
        if (!preset.empty()) {
            text = std::string(preset_text(preset));
        } else if (!config_path.empty()) {
            std::ifstream in(config_path, std::ios::binary);
            if (!in) {
                err << "error: cannot read config '" << config_path << "'\n";
                return kIo;
            }
            std::ostringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        } else {
            err << "error: one of --config or --preset is required\n";
            return kValidation;
        }
        config = parse_config(text, overrides);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kValidation;
    } catch (const ValidationError& e) {
        err << "config error: " << e.what() << '\n';
        return kValidation;
    }
    return run(command, config, out_path, out, err);
}

}  // namespace iontrap::cli
