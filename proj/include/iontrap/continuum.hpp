#pragma once

#include <span>
#include <string>
#include <vector>

// Continuum descriptions of the axial ion density. All lengths are in units
// of the trap scale d0.
namespace iontrap::continuum {

/// NearestNeighbor balances the nearest-neighbour Coulomb force against the
/// trap; DubinFluid uses the charged-fluid ellipsoid with a discreteness
/// correction to the length.
enum class Model { NearestNeighbor, DubinFluid };

const char* to_string(Model m);
Model model_from_string(const std::string& s);

/// 6 exp(gamma - 13/5), about 0.79.
double dubin_c0();

/// Half-length L of the chain.
double chain_length(int n_ions, Model model);

/// Spacing s0 at the centre of the chain.
double min_spacing(int n_ions, Model model);

/// s(z) = s0 / (1 - (z/L)^2). Throws DomainError for |z/L| >= 1.
double spacing_profile(double z_over_l, int n_ions, Model model);

/// Number of ions between the centre and z, i.e. the integral of 1/s.
double cumulative_count(double z, int n_ions, Model model);

/// Cubic count law n(z) = a z - b z^3.
struct MJFit {
    double a = 0.0;
    double b = 0.0;

    double count(double z) const { return a * z - b * z * z * z; }
    /// Inverse of `count` on the monotone branch |z| < sqrt(a / 3b).
    double position(double n) const;
    /// Largest count reachable on the monotone branch.
    double max_count() const;
};

/// Least-squares fit of a and b to (z, n) samples.
MJFit fit_cubic(std::span<const double> z, std::span<const double> n);

/// Fits the cubic to the model's cumulative count sampled on |z| <= 0.95 L.
/// Requires N >= 25.
MJFit fit_mj(int n_ions, Model model, int samples = 201);

/// Coefficients that reproduce the model's count law exactly
/// (a = 1/s0, b = 1/(3 s0 L^2)); usable for any N the model accepts.
MJFit cubic_count_law(int n_ions, Model model);

/// Ion sites predicted by the continuum: the k-th ion (0-based) sits where
/// the count from the centre equals k + 1/2 - N/2, normalised so the model's
/// total count maps onto N ions.
std::vector<double> continuum_sites(int n_ions, Model model);

}  // namespace iontrap::continuum
