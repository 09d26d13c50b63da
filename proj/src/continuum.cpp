#include "iontrap/continuum.hpp"

#include <cmath>
#include <string>

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"

namespace iontrap::continuum {

namespace {

void require_ions(int n_ions) {
    if (n_ions < 2) throw ValidationError("n_ions", "continuum models need at least 2 ions");
}

double dubin_log(int n_ions) {
    const double lg = std::log(dubin_c0() * n_ions);
    if (!(lg > 0.0)) {
        throw DomainError("Dubin length requires ln(c0 N) > 0, got N = " + std::to_string(n_ions));
    }
    return lg;
}

}  // namespace

const char* to_string(Model m) {
    return m == Model::NearestNeighbor ? "nearest_neighbor" : "dubin";
}

Model model_from_string(const std::string& s) {
    if (s == "dubin" || s == "dubin_fluid" || s == "DubinFluid") return Model::DubinFluid;
    if (s == "nearest_neighbor" || s == "nn" || s == "NearestNeighbor") return Model::NearestNeighbor;
    throw ValidationError("continuum", "expected 'dubin' or 'nearest_neighbor', got '" + s + "'");
}

double dubin_c0() { return 6.0 * std::exp(constants::euler_gamma - 13.0 / 5.0); }

double chain_length(int n_ions, Model model) {
    require_ions(n_ions);
    if (model == Model::NearestNeighbor) {
        return std::cbrt(constants::pi * constants::pi * n_ions / 2.0);
    }
    return std::cbrt(3.0 * n_ions * dubin_log(n_ions));
}

double min_spacing(int n_ions, Model model) {
    const double length = chain_length(n_ions, model);
    if (model == Model::NearestNeighbor) {
        return 2.0 * constants::pi * constants::pi / (length * length);
    }
    return 4.0 * length / (3.0 * n_ions);
}

double spacing_profile(double z_over_l, int n_ions, Model model) {
    if (!(std::abs(z_over_l) < 1.0)) {
        throw DomainError("spacing profile is defined only for |z/L| < 1");
    }
    return min_spacing(n_ions, model) / (1.0 - z_over_l * z_over_l);
}

double cumulative_count(double z, int n_ions, Model model) {
    return cubic_count_law(n_ions, model).count(z);
}

double MJFit::max_count() const { return 2.0 / 3.0 * a * std::sqrt(a / (3.0 * b)); }

double MJFit::position(double n) const {
    const double n_max = max_count();
    if (std::abs(n) > n_max) {
        throw DomainError("count lies beyond the monotone branch of the cubic");
    }
    const double z_turn = std::sqrt(a / (3.0 * b));
    return 2.0 * z_turn * std::sin(std::asin(n / n_max) / 3.0);
}

MJFit fit_cubic(std::span<const double> z, std::span<const double> n) {
    if (z.size() != n.size() || z.size() < 2) {
        throw ValidationError("samples", "need at least two (z, n) pairs of equal length");
    }
    // Basis {z, -z^3}; 2x2 normal equations.
    double s11 = 0, s12 = 0, s22 = 0, r1 = 0, r2 = 0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        const double p1 = z[k];
        const double p2 = -z[k] * z[k] * z[k];
        s11 += p1 * p1;
        s12 += p1 * p2;
        s22 += p2 * p2;
        r1 += p1 * n[k];
        r2 += p2 * n[k];
    }
    const double det = s11 * s22 - s12 * s12;
    if (!(std::abs(det) > 1e-14 * s11 * s22)) {
        throw DomainError("cubic fit: singular normal equations");
    }
    return MJFit{(r1 * s22 - r2 * s12) / det, (s11 * r2 - s12 * r1) / det};
}

MJFit cubic_count_law(int n_ions, Model model) {
    const double length = chain_length(n_ions, model);
    const double s0 = min_spacing(n_ions, model);
    return MJFit{1.0 / s0, 1.0 / (3.0 * s0 * length * length)};
}

MJFit fit_mj(int n_ions, Model model, int samples) {
    if (n_ions < 25) throw ValidationError("n_ions", "cubic count fit needs N >= 25");
    if (samples < 3) throw ValidationError("samples", "need at least 3 samples");
    const double length = chain_length(n_ions, model);
    std::vector<double> z(samples);
    std::vector<double> n(samples);
    for (int k = 0; k < samples; ++k) {
        z[k] = 0.95 * length * (-1.0 + 2.0 * k / (samples - 1));
        n[k] = cumulative_count(z[k], n_ions, model);
    }
    MJFit fit = fit_cubic(z, n);
    if (!(fit.a > 0.0 && fit.b > 0.0)) {
        throw DomainError("cubic fit produced non-positive coefficients");
    }
    return fit;
}

std::vector<double> continuum_sites(int n_ions, Model model) {
    const MJFit law = cubic_count_law(n_ions, model);
    const double half_total = law.max_count();
    std::vector<double> sites(n_ions);
    for (int k = 0; k < n_ions; ++k) {
        const double fraction = (k + 0.5 - 0.5 * n_ions) / n_ions;
        sites[k] = law.position(2.0 * fraction * half_total);
    }
    return sites;
}

}  // namespace iontrap::continuum
