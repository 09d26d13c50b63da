#include "iontrap/sums.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <string>

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"

namespace iontrap::sums {

namespace {

constexpr int kZetaTerms = 1000000;
constexpr int kMaxCachedExponent = 128;

void require_exponent(int n) {
    if (n < 2) throw DomainError("lattice sums need an exponent n >= 2, got " + std::to_string(n));
}

double inverse_power(double x, int n) { return std::pow(x, -n); }

double compute_zeta(int n) {
    // Sum from the smallest term upward, stopping early once terms are far
    // below double resolution.
    int j_max = kZetaTerms;
    if (n > 2) {
        const double cutoff = std::pow(1e-20, -1.0 / n);
        if (cutoff < j_max) j_max = static_cast<int>(std::ceil(cutoff));
    }
    double sum = 0.0;
    for (int j = j_max; j >= 1; --j) sum += inverse_power(j, n);
    // Euler-Maclaurin tail for j > j_max.
    const double jm = j_max;
    const double tail = std::pow(jm, 1 - n) / (n - 1) - 0.5 * std::pow(jm, -n) +
                        n * std::pow(jm, -n - 1) / 12.0 -
                        n * (n + 1.0) * (n + 2.0) * std::pow(jm, -n - 3) / 720.0;
    return sum + tail;
}

}  // namespace

void SumSpec::validate() const { require_exponent(n); }

double zeta(int n) {
    require_exponent(n);
    if (n > kMaxCachedExponent) return compute_zeta(n);
    static std::array<double, kMaxCachedExponent + 1> cache{};
    static std::array<std::once_flag, kMaxCachedExponent + 1> done;
    std::call_once(done[n], [n] { cache[n] = compute_zeta(n); });
    return cache[n];
}

double pair_sum_exact(const IonChain& chain, std::size_t i, int n) {
    require_exponent(n);
    const auto u = chain.positions();
    if (i >= u.size()) throw ValidationError("index", "ion index " + std::to_string(i) + " out of range");
    double sum = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        if (j == i) continue;
        sum += inverse_power(std::abs(u[i] - u[j]), n);
    }
    return sum;
}

double pair_sum_approx(double s_local, int n) {
    require_exponent(n);
    if (!(s_local > 0.0)) throw ValidationError("s_local", "spacing must be positive");
    return 2.0 * zeta(n) * inverse_power(s_local, n);
}

double chain_total_exact(const IonChain& chain, int n) {
    require_exponent(n);
    if (chain.n_ions() < 2) throw ValidationError("n_ions", "chain totals need at least 2 ions");
    double total = 0.0;
    for (double s : local_spacings(chain)) total += inverse_power(s, n);
    return total;
}

double chain_total_continuum(int n_ions, int n, continuum::Model model) {
    require_exponent(n);
    const double length = continuum::chain_length(n_ions, model);
    double total = 0.0;
    for (double z : continuum::continuum_sites(n_ions, model)) {
        total += inverse_power(continuum::spacing_profile(z / length, n_ions, model), n);
    }
    return total;
}

double chain_total(const IonChain& chain, const SumSpec& spec, continuum::Model model) {
    spec.validate();
    if (spec.source == Source::DiscreteChain) return chain_total_exact(chain, spec.n);
    return chain_total_continuum(chain.n_ions(), spec.n, model);
}

double asymptotic_beta_factor(int n) {
    require_exponent(n);
    return std::sqrt(4.0 * constants::pi / (4.0 * n + 7.0));
}

double chain_total_asymptotic(int n_ions, int n, continuum::Model model) {
    const double length = continuum::chain_length(n_ions, model);
    const double s0 = continuum::min_spacing(n_ions, model);
    return length * inverse_power(s0, n + 1) * asymptotic_beta_factor(n);
}

}  // namespace iontrap::sums
