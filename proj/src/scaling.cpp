#include "iontrap/scaling.hpp"

#include <algorithm>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <fmt/format.h>

#include "iontrap/continuum.hpp"
#include "iontrap/errors.hpp"

namespace iontrap::scaling {

namespace {

double s0_metres(int n_ions, double omega_z, const IonSpecies& species, double omega_t,
                 continuum::Model model) {
    const TrapConfig trap{omega_z, omega_t, n_ions};
    return continuum::min_spacing(n_ions, model) * derive_scales(species, trap).d0;
}

}  // namespace

const char* policy_name(const ScalingPolicy& policy) {
    return std::holds_alternative<FixedVoltage>(policy) ? "fixed_voltage" : "fixed_spacing";
}

std::optional<ReferenceExponent> reference_exponent(const ScalingPolicy& policy, Multipole m) {
    if (std::holds_alternative<FixedVoltage>(policy)) {
        if (m == Multipole::E2) return ReferenceExponent{35.0 / 6.0, -8.0 / 3.0};
        return ReferenceExponent{9.0 / 2.0, -2.0};
    }
    // Quoted for the quadrupole case only.
    if (m == Multipole::E2) return ReferenceExponent{5.0 / 2.0, -1.0};
    return std::nullopt;
}

std::vector<int> log_grid(int n_min, int n_max, int per_decade) {
    if (n_min < 2 || n_max <= n_min) throw ValidationError("n_min", "need 2 <= n_min < n_max");
    if (per_decade < 1) throw ValidationError("per_decade", "must be positive");
    std::vector<int> out;
    const double decades = std::log10(static_cast<double>(n_max) / n_min);
    const int steps = static_cast<int>(std::ceil(decades * per_decade - 1e-9));
    for (int k = 0; k <= steps; ++k) {
        const double x = std::min(static_cast<double>(n_max), n_min * std::pow(10.0, static_cast<double>(k) / per_decade));
        const int n = static_cast<int>(std::lround(x));
        if (out.empty() || n > out.back()) out.push_back(n);
    }
    if (out.back() != n_max) out.push_back(n_max);
    return out;
}

double solve_axial_frequency(int n_ions, double s0_target_m, const IonSpecies& species,
                             double omega_t, continuum::Model model) {
    if (!(s0_target_m > 0.0)) throw ValidationError("s0_target_m", "must be positive");
    const double log_target = std::log(s0_target_m);
    const auto mismatch = [&](double log_omega) {
        return std::log(s0_metres(n_ions, std::exp(log_omega), species, omega_t, model)) - log_target;
    };
    // s0 falls monotonically with omega_z (s0 ~ omega_z^(-2/3)).
    const double hi = std::log(omega_t) + std::log1p(-1e-12);
    const double lo = std::log(omega_t) - std::log(1e12);
    const double f_hi = mismatch(hi);
    const double f_lo = mismatch(lo);
    if (f_hi > 0.0) {
        throw DomainError(fmt::format(
            "s0 = {:.4g} m is unattainable for N = {}: it needs omega_z above omega_t", s0_target_m, n_ions));
    }
    if (f_lo < 0.0) {
        throw DomainError(fmt::format(
            "s0 = {:.4g} m is unattainable for N = {}: it needs omega_z below 1e-12 omega_t", s0_target_m,
            n_ions));
    }
    boost::uintmax_t max_iter = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(mismatch, lo, hi, f_lo, f_hi,
                                                          boost::math::tools::eps_tolerance<double>(50),
                                                          max_iter);
    return std::exp(0.5 * (a + b));
}

ScalingSeries scan(const ScalingPolicy& policy, std::vector<int> n_values, const IonSpecies& species,
                   const TrapConfig& base_trap, const ModelOptions& options) {
    species.validate();
    if (n_values.empty()) throw ValidationError("n_values", "a scan needs at least one value of N");
    std::sort(n_values.begin(), n_values.end());
    n_values.erase(std::unique(n_values.begin(), n_values.end()), n_values.end());
    if (n_values.front() < 2) throw ValidationError("n_values", "every N must be at least 2");

    ScalingSeries series;
    series.reference = reference_exponent(policy, species.multipole);
    for (int n : n_values) {
        TrapConfig trap;
        trap.n_ions = n;
        if (const auto* fv = std::get_if<FixedVoltage>(&policy)) {
            trap.omega_z = fv->omega_z;
            trap.omega_t = fv->omega_t;
        } else {
            const auto& fs = std::get<FixedSpacing>(policy);
            trap.omega_t = base_trap.omega_t;
            trap.omega_z = solve_axial_frequency(n, fs.s0_target_m, species, trap.omega_t, options.model);
        }
        const DerivedScales scales = derive_scales(species, trap, options.moment_multiplier);
        ScalingRow row;
        row.n_ions = n;
        row.omega_z = trap.omega_z;
        row.d0 = scales.d0;
        row.s0 = continuum::min_spacing(n, options.model) * scales.d0;
        row.rate_vib = closed_form_rate(n, species, trap, options).full;
        row.rate_rad = 1.0 / radiative_time(species, n);
        series.rows.push_back(row);
    }
    return series;
}

ExponentFit fit_exponent(const ScalingSeries& series, const LogCorrection& correction, Quantity quantity) {
    const auto& rows = series.rows;
    if (rows.size() < 4) throw ValidationError("series", "exponent fit needs at least 4 rows");
    if (rows.back().n_ions < 10 * rows.front().n_ions) {
        throw ValidationError("series", "exponent fit needs rows spanning at least one decade in N");
    }
    std::vector<double> x, y;
    for (const auto& row : rows) {
        double value = quantity == Quantity::Vibrational ? row.rate_vib : row.rate_rad;
        if (const auto* lp = std::get_if<LogPower>(&correction)) {
            const double scale = lp->scale > 0.0 ? lp->scale : continuum::dubin_c0();
            const double lg = std::log(scale * row.n_ions);
            if (!(lg > 0.0)) throw DomainError("log correction needs ln(scale N) > 0");
            value /= std::pow(lg, lp->power);
        }
        x.push_back(std::log(static_cast<double>(row.n_ions)));
        y.push_back(std::log(value));
    }
    const double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    ExponentFit fit;
    fit.slope = sxy / sxx;
    fit.points = static_cast<int>(x.size());
    double ssr = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        const double r = y[k] - (my + fit.slope * (x[k] - mx));
        ssr += r * r;
    }
    fit.std_error = std::sqrt(ssr / (n - 2.0) / sxx);
    return fit;
}

}  // namespace iontrap::scaling
