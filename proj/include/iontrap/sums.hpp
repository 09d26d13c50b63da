#pragma once

#include <cstddef>

#include "iontrap/chain.hpp"
#include "iontrap/continuum.hpp"

// Inverse-power lattice sums over the chain, in units of d0.
namespace iontrap::sums {

enum class Source { DiscreteChain, ContinuumProfile };

struct SumSpec {
    int n = 8;
    Source source = Source::DiscreteChain;

    void validate() const;
};

/// Riemann zeta at integer n >= 2, absolute error below 1e-12. Cached per n.
double zeta(int n);

/// S_n(i) = sum_{j != i} |u_i - u_j|^-n, by direct summation.
double pair_sum_exact(const IonChain& chain, std::size_t i, int n);

/// 2 zeta(n) / s^n: the pair sum of an ion in a locally uniform chain with gap s.
double pair_sum_approx(double s_local, int n);

/// T_n = sum_i s_i^-n over the discrete chain's local spacings.
double chain_total_exact(const IonChain& chain, int n);

/// T_n summed over the continuum model's predicted ion sites, with s taken
/// from the model's spacing profile at each site.
double chain_total_continuum(int n_ions, int n, continuum::Model model);

/// Dispatches on the source field; the chain is used only for DiscreteChain.
double chain_total(const IonChain& chain, const SumSpec& spec, continuum::Model model);

/// sqrt(4 pi / (4n + 7)), the large-n form of B(n + 2, 1/2).
double asymptotic_beta_factor(int n);

/// Integral estimate T_n ~ L / s0^(n+1) * sqrt(4 pi / (4n + 7)).
double chain_total_asymptotic(int n_ions, int n, continuum::Model model);

}  // namespace iontrap::sums
