#include "iontrap/chain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "iontrap/continuum.hpp"
#include "iontrap/errors.hpp"

namespace iontrap {

namespace {

constexpr int kMaxIons = 10000;
constexpr int kContinuumStartThreshold = 10;
// Multiple of the position-rounding estimate accepted as converged.
constexpr double kFloorFactor = 1.0;

bool strictly_increasing(std::span<const double> u) {
    for (std::size_t i = 1; i < u.size(); ++i) {
        if (!(u[i] > u[i - 1])) return false;
    }
    return true;
}

double norm2(std::span<const double> v) {
    long double acc = 0.0L;
    for (double x : v) acc += static_cast<long double>(x) * x;
    return static_cast<double>(std::sqrt(acc));
}

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

// Attainable residual given that positions are stored as doubles: each
// coordinate carries half an ulp of error, multiplied by the local stiffness,
// plus the cancellation error of the force sum itself.
double rounding_floor(std::span<const double> u) {
    const std::size_t n = u.size();
    std::vector<double> acc(n);
    for (std::size_t i = 0; i < n; ++i) acc[i] = std::abs(u[i]);
    for (std::size_t i = 0; i < n; ++i) {
        const double ai = std::abs(u[i]);
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = u[j] - u[i];
            const double inv2 = 1.0 / (d * d);
            const double term = 2.0 * inv2 / d * (ai + std::abs(u[j])) + inv2;
            acc[i] += term;
            acc[j] += term;
        }
    }
    return std::numeric_limits<double>::epsilon() * max_abs(acc);
}

std::vector<double> initial_guess(int n_ions) {
    if (n_ions >= kContinuumStartThreshold) {
        return continuum::continuum_sites(n_ions, continuum::Model::DubinFluid);
    }
    std::vector<double> u(n_ions);
    for (int i = 0; i < n_ions; ++i) u[i] = i - 0.5 * (n_ions - 1);
    return u;
}

void symmetrize(std::vector<double>& u) {
    const std::size_t n = u.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        const double half = 0.5 * (u[i] - u[n - 1 - i]);
        u[i] = half;
        u[n - 1 - i] = -half;
    }
    if (n % 2 == 1) u[n / 2] = 0.0;
}

// Jacobian of the force imbalance: J_ii = 1 + sum_j w_ij, J_ij = -w_ij with
// w_ij = 2/|u_i-u_j|^3. Symmetric positive definite on the ordered cone.
class ForceJacobian {
public:
    explicit ForceJacobian(std::span<const double> u)
        : u_(u), diag_(u.size(), 1.0), nn_diag_(u.size(), 1.0), lower_(u.size(), 0.0) {
        const std::size_t n = u.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                const double d = u[j] - u[i];
                const double w = 2.0 / (d * d * d);
                diag_[i] += w;
                diag_[j] += w;
            }
            if (i > 0) {
                const double d = u[i] - u[i - 1];
                lower_[i] = -2.0 / (d * d * d);
                nn_diag_[i] -= lower_[i];
                nn_diag_[i - 1] -= lower_[i];
            }
        }
    }

    void apply(std::span<const double> v, std::span<double> out) const {
        const std::size_t n = u_.size();
        for (std::size_t i = 0; i < n; ++i) out[i] = diag_[i] * v[i];
        for (std::size_t i = 0; i < n; ++i) {
            const double ui = u_[i];
            const double vi = v[i];
            double acc = 0.0;
            for (std::size_t j = i + 1; j < n; ++j) {
                const double d = u_[j] - ui;
                const double w = 2.0 / (d * d * d);
                acc += w * v[j];
                out[j] -= w * vi;
            }
            out[i] -= acc;
        }
    }

    // Solves the nearest-neighbour-only Jacobian (trap plus adjacent pairs),
    // a tridiagonal system, by the Thomas algorithm. Keeping the far pairs out
    // of the diagonal too leaves the preconditioned spectrum in [1, ~ln N].
    void precondition(std::span<const double> r, std::span<double> out) const {
        const std::size_t n = u_.size();
        std::vector<double> c(n);
        double denom = nn_diag_[0];
        out[0] = r[0] / denom;
        for (std::size_t i = 1; i < n; ++i) {
            c[i - 1] = lower_[i] / denom;
            denom = nn_diag_[i] - lower_[i] * c[i - 1];
            out[i] = (r[i] - lower_[i] * out[i - 1]) / denom;
        }
        for (std::size_t i = n - 1; i-- > 0;) out[i] -= c[i] * out[i + 1];
    }

private:
    std::span<const double> u_;
    std::vector<double> diag_;
    std::vector<double> nn_diag_;
    std::vector<double> lower_;
};

// Preconditioned conjugate gradients for J x = b, stopped at a relative
// residual of `forcing` (inexact Newton).
std::vector<double> solve_newton_step(const ForceJacobian& jac, std::span<const double> b,
                                      double forcing) {
    const std::size_t n = b.size();
    std::vector<double> x(n, 0.0), r(b.begin(), b.end()), z(n), p(n), q(n);
    jac.precondition(r, z);
    p = z;
    double rz = 0.0;
    for (std::size_t i = 0; i < n; ++i) rz += r[i] * z[i];
    const double target = forcing * norm2(b);
    for (int it = 0; it < 500 && norm2(r) > target; ++it) {
        jac.apply(p, q);
        double pq = 0.0;
        for (std::size_t i = 0; i < n; ++i) pq += p[i] * q[i];
        const double alpha = rz / pq;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        jac.precondition(r, z);
        double rz_next = 0.0;
        for (std::size_t i = 0; i < n; ++i) rz_next += r[i] * z[i];
        const double beta = rz_next / rz;
        rz = rz_next;
        for (std::size_t i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    return x;
}

}  // namespace

IonChain::IonChain(std::vector<double> positions, double residual, double certified, int iterations)
    : positions_(std::move(positions)),
      residual_(residual),
      certified_tolerance_(certified),
      iterations_(iterations) {}

IonChain IonChain::from_positions(std::vector<double> positions) {
    if (positions.empty()) throw ValidationError("positions", "chain needs at least one ion");
    if (!strictly_increasing(positions)) {
        throw ValidationError("positions", "must be strictly increasing");
    }
    const double r = residual_force(positions);
    return IonChain(std::move(positions), r, r, 0);
}

std::vector<double> force_imbalance(std::span<const double> u) {
    const std::size_t n = u.size();
    std::vector<double> f(u.begin(), u.end());
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = u[j] - u[i];
            const double push = 1.0 / (d * d);
            acc += push;
            f[j] -= push;
        }
        f[i] += acc;
    }
    return f;
}

double residual_force(std::span<const double> positions) {
    return max_abs(force_imbalance(positions));
}

double residual_force(const IonChain& chain) { return residual_force(chain.positions()); }

double potential_energy(std::span<const double> u) {
    long double e = 0.0L;
    for (std::size_t i = 0; i < u.size(); ++i) {
        e += 0.5L * u[i] * u[i];
        for (std::size_t j = i + 1; j < u.size(); ++j) {
            e += 1.0L / std::abs(static_cast<long double>(u[i]) - u[j]);
        }
    }
    return static_cast<double>(e);
}

IonChain solve_equilibrium(int n_ions, const SolverOptions& options) {
    if (n_ions < 1 || n_ions > kMaxIons) {
        throw ValidationError("n_ions", "must lie in [1, " + std::to_string(kMaxIons) + "]");
    }
    if (!(options.tolerance > 0.0)) throw ValidationError("solver_tolerance", "must be positive");
    if (options.max_iterations < 1) throw ValidationError("solver_max_iterations", "must be positive");
    if (n_ions == 1) return IonChain({0.0}, 0.0, options.tolerance, 0);

    std::vector<double> u = initial_guess(n_ions);
    symmetrize(u);
    std::vector<double> f = force_imbalance(u);
    double best = max_abs(f);

    for (int it = 0; it < options.max_iterations; ++it) {
        const double residual = max_abs(f);
        best = std::min(best, residual);
        const double certified = std::max(options.tolerance, kFloorFactor * rounding_floor(u));
        if (residual <= certified) return IonChain(std::move(u), residual, certified, it);

        const ForceJacobian jac(u);
        std::vector<double> rhs(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) rhs[i] = -f[i];
        const double merit = norm2(f);
        const double forcing = std::clamp(merit, 1e-10, 1e-3);
        const std::vector<double> step = solve_newton_step(jac, rhs, forcing);

        bool accepted = false;
        std::vector<double> trial(u.size());
        for (double damping = 1.0; damping > 1e-10; damping *= 0.5) {
            for (std::size_t i = 0; i < u.size(); ++i) trial[i] = u[i] + damping * step[i];
            symmetrize(trial);
            if (!strictly_increasing(trial)) continue;
            std::vector<double> f_trial = force_imbalance(trial);
            if (norm2(f_trial) < merit) {
                u.swap(trial);
                f.swap(f_trial);
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    const double residual = max_abs(f);
    best = std::min(best, residual);
    throw SolverError("equilibrium solve for N = " + std::to_string(n_ions) +
                          " did not converge; best residual " + std::to_string(best),
                      best);
}

double local_spacing(const IonChain& chain, std::size_t i) {
    const auto u = chain.positions();
    const std::size_t n = u.size();
    if (n < 2) throw ValidationError("n_ions", "local spacing needs at least 2 ions");
    if (i >= n) throw ValidationError("index", "ion index " + std::to_string(i) + " out of range");
    if (i == 0) return u[1] - u[0];
    if (i == n - 1) return u[n - 1] - u[n - 2];
    return 0.5 * (u[i + 1] - u[i - 1]);
}

std::vector<double> local_spacings(const IonChain& chain) {
    std::vector<double> s(chain.positions().size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = local_spacing(chain, i);
    return s;
}

}  // namespace iontrap
