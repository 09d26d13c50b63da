#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace iontrap {

struct SolverOptions {
    double tolerance = 1e-12;
    int max_iterations = 200;
};

/// Axial equilibrium of N ions in units of d0. Positions are strictly
/// increasing and satisfy u_i = sum_{j<i} (u_i-u_j)^-2 - sum_{j>i} (u_j-u_i)^-2.
class IonChain {
public:
    /// Wraps arbitrary strictly increasing positions (synthetic chains,
    /// perturbed solutions). The residual is evaluated, not assumed.
    static IonChain from_positions(std::vector<double> positions);

    int n_ions() const { return static_cast<int>(positions_.size()); }
    std::span<const double> positions() const { return positions_; }
    double position(std::size_t i) const { return positions_.at(i); }
    /// Max force imbalance at the stored positions.
    double residual() const { return residual_; }
    /// Residual bound the solver certified; max(tolerance, rounding floor).
    double certified_tolerance() const { return certified_tolerance_; }
    int iterations() const { return iterations_; }

private:
    IonChain(std::vector<double> positions, double residual, double certified, int iterations);

    std::vector<double> positions_;
    double residual_ = 0.0;
    double certified_tolerance_ = 0.0;
    int iterations_ = 0;

    friend IonChain solve_equilibrium(int n_ions, const SolverOptions& options);
};

/// Damped Newton solve of the force balance, 1 <= N <= 10^4.
/// Throws SolverError (carrying the best residual) if the iteration budget runs out.
IonChain solve_equilibrium(int n_ions, const SolverOptions& options = {});

/// Mean of the two adjacent gaps for interior ions, the single gap at the ends.
double local_spacing(const IonChain& chain, std::size_t i);

/// All local spacings, in ion order.
std::vector<double> local_spacings(const IonChain& chain);

/// Per-ion force imbalance u_i - sum_j sign(u_i-u_j)/(u_i-u_j)^2.
std::vector<double> force_imbalance(std::span<const double> positions);

double residual_force(std::span<const double> positions);
double residual_force(const IonChain& chain);

/// 1/2 sum u_i^2 + sum_{i<j} 1/|u_i - u_j|.
double potential_energy(std::span<const double> positions);

}  // namespace iontrap
