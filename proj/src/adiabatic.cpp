#include "iontrap/adiabatic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fmt/format.h>
#include <boost/numeric/odeint.hpp>

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"

namespace iontrap::adiabatic {

namespace {

using State = std::array<std::complex<double>, 2>;
constexpr double kRegimeThreshold = 0.1;

void check_sampled(const SampledDrive& d) {
    if (d.t.size() < 2 || d.fx.size() != d.t.size() || d.fy.size() != d.t.size()) {
        throw ValidationError("drive", "sampled drive needs >= 2 rows of equal length");
    }
    for (std::size_t k = 1; k < d.t.size(); ++k) {
        if (!(d.t[k] > d.t[k - 1])) throw ValidationError("drive", "sample times must increase");
    }
}

// Linear interpolation inside the table, zero outside it.
std::pair<double, double> interpolate(const SampledDrive& d, double t) {
    if (t < d.t.front() || t > d.t.back()) return {0.0, 0.0};
    const auto hi = std::upper_bound(d.t.begin(), d.t.end(), t);
    if (hi == d.t.end()) return {d.fx.back(), d.fy.back()};
    const std::size_t k = static_cast<std::size_t>(hi - d.t.begin());
    const double w = (t - d.t[k - 1]) / (d.t[k] - d.t[k - 1]);
    return {d.fx[k - 1] + w * (d.fx[k] - d.fx[k - 1]), d.fy[k - 1] + w * (d.fy[k] - d.fy[k - 1])};
}

double norm_sq(const State& s) { return std::norm(s[0]) + std::norm(s[1]); }

}  // namespace

DriveField::DriveField(CircularDrive d) : form_(d) {}
DriveField::DriveField(ConstantDrive d) : form_(d) {}
DriveField::DriveField(SampledDrive d) : form_((check_sampled(d), std::move(d))) {}

std::complex<double> DriveField::f_plus(double t) const {
    return std::visit(
        [t](const auto& d) -> std::complex<double> {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, ConstantDrive>) {
                return {d.fx, d.fy};
            } else if constexpr (std::is_same_v<T, CircularDrive>) {
                return std::polar(d.amplitude, d.rotation_rate * t);
            } else {
                const auto [fx, fy] = interpolate(d, t);
                return {fx, fy};
            }
        },
        form_);
}

double DriveField::magnitude_sq(double t) const { return std::norm(f_plus(t)); }

bool DriveField::constant_magnitude() const { return !std::holds_alternative<SampledDrive>(form_); }

double DriveField::peak_amplitude() const {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, ConstantDrive>) {
                return std::hypot(d.fx, d.fy);
            } else if constexpr (std::is_same_v<T, CircularDrive>) {
                return std::abs(d.amplitude);
            } else {
                double m = 0.0;
                for (std::size_t k = 0; k < d.t.size(); ++k) m = std::max(m, std::hypot(d.fx[k], d.fy[k]));
                return m;
            }
        },
        form_);
}

double DriveField::peak_rate() const {
    return std::visit(
        [](const auto& d) -> double {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, ConstantDrive>) {
                return 0.0;
            } else if constexpr (std::is_same_v<T, CircularDrive>) {
                return std::abs(d.rotation_rate);
            } else {
                // |df/dt| / |f| over each segment, the relative rate of variation.
                double m = 0.0;
                for (std::size_t k = 1; k < d.t.size(); ++k) {
                    const double dt = d.t[k] - d.t[k - 1];
                    const double df = std::hypot(d.fx[k] - d.fx[k - 1], d.fy[k] - d.fy[k - 1]) / dt;
                    const double f = std::max(std::hypot(d.fx[k], d.fy[k]), std::hypot(d.fx[k - 1], d.fy[k - 1]));
                    if (f > 0.0) m = std::max(m, df / f);
                }
                return m;
            }
        },
        form_);
}

std::vector<std::string> DriveField::regime_warnings(double omega0) const {
    std::vector<std::string> out;
    const double weak = peak_amplitude() / omega0;
    const double slow = peak_rate() / omega0;
    if (weak >= kRegimeThreshold) {
        out.push_back(fmt::format("drive is not weak: |f|/omega0 = {:.3g}", weak));
    }
    if (slow >= kRegimeThreshold) {
        out.push_back(fmt::format("drive is not slow: rate/omega0 = {:.3g}", slow));
    }
    return out;
}

SpinTrajectory integrate_tls(double omega0, const DriveField& drive, Amplitudes initial,
                             double t_end, double dt, const IntegrationOptions& options) {
    if (!(omega0 > 0.0)) throw ValidationError("omega0", "must be positive");
    if (!(dt > 0.0) || dt > 0.1 / omega0 * (1.0 + 1e-12)) {
        throw ValidationError("dt", "step must satisfy 0 < dt <= 0.1/omega0 to resolve the fast phase");
    }
    if (!(t_end >= 0.0)) throw ValidationError("t_end", "must be non-negative");
    if (options.stride < 1) throw ValidationError("stride", "must be at least 1");
    State x{initial.first, initial.second};
    if (std::abs(norm_sq(x) - 1.0) > 1e-12) {
        throw ValidationError("initial", "initial state must be normalized");
    }

    const auto rhs = [omega0, &drive](const State& u, State& dudt, double t) {
        const std::complex<double> fp = drive.f_plus(t);
        const std::complex<double> rot = std::polar(1.0, omega0 * t);
        constexpr std::complex<double> minus_i{0.0, -1.0};
        dudt[0] = minus_i * rot * std::conj(fp) * u[1];
        dudt[1] = minus_i * std::conj(rot) * fp * u[0];
    };

    SpinTrajectory traj;
    traj.omega0 = omega0;
    const auto store = [&](double t) {
        traj.times.push_back(t);
        traj.u_plus.push_back(x[0]);
        traj.u_minus.push_back(x[1]);
    };
    store(0.0);

    boost::numeric::odeint::runge_kutta_dopri5<State, double, State, double> stepper;
    const long long steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
    for (long long k = 0; k < steps; ++k) {
        const double t = k * dt;
        const double h = std::min(dt, t_end - t);
        stepper.do_step(rhs, x, t, h);
        const double drift = std::abs(norm_sq(x) - 1.0);
        traj.max_norm_drift = std::max(traj.max_norm_drift, drift);
        if (drift > options.max_norm_drift) {
            throw AccuracyError(fmt::format("norm drift {:.3e} at t = {:.6g} exceeds {:.1e}", drift,
                                            t + h, options.max_norm_drift));
        }
        if ((k + 1) % options.stride == 0 || k + 1 == steps) store(t + h);
    }
    return traj;
}

double adiabatic_phase(const DriveField& drive, double omega0, double t) {
    if (!(omega0 > 0.0)) throw ValidationError("omega0", "must be positive");
    if (!(t >= 0.0)) throw ValidationError("t", "must be non-negative");
    if (drive.constant_magnitude()) return drive.magnitude_sq(0.0) * t / omega0;

    // |f|^2 is piecewise quadratic between samples: Simpson is exact per panel.
    const auto& table = std::get<SampledDrive>(drive.form());
    // The drive vanishes outside the table, so integrate over its support only.
    const double lo = std::max(0.0, table.t.front());
    const double hi = std::min(t, table.t.back());
    if (!(hi > lo)) return 0.0;
    std::vector<double> knots{lo};
    for (double tk : table.t) {
        if (tk > lo && tk < hi) knots.push_back(tk);
    }
    knots.push_back(hi);
    double integral = 0.0;
    for (std::size_t k = 1; k < knots.size(); ++k) {
        const double a = knots[k - 1];
        const double b = knots[k];
        integral += (b - a) / 6.0 *
                    (drive.magnitude_sq(a) + 4.0 * drive.magnitude_sq(0.5 * (a + b)) + drive.magnitude_sq(b));
    }
    return integral / omega0;
}

std::vector<double> overlap_fidelity(const SpinTrajectory& trajectory, double omega0) {
    if (!(omega0 > 0.0)) throw ValidationError("omega0", "must be positive");
    if (trajectory.times.empty()) throw ValidationError("trajectory", "empty trajectory");
    const double h = 1.0 / std::sqrt(2.0);
    if (std::abs(trajectory.u_plus.front() - h) > 1e-12 ||
        std::abs(trajectory.u_minus.front() - h) > 1e-12) {
        throw ValidationError("trajectory", "overlap formula assumes the initial state (|+> + |->)/sqrt 2");
    }
    // The bare phases e^{-+i omega0 t/2} are common to psi0 and psi, so the
    // overlap reduces to (u+ + u-)/sqrt 2 in the rotating frame.
    std::vector<double> out(trajectory.times.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = (h * (trajectory.u_plus[k] + trajectory.u_minus[k])).real();
    }
    return out;
}

PrecessionFrequency instantaneous_frequency(double omega0, double coupling_energy) {
    const double v = coupling_energy / constants::hbar;
    return {std::sqrt(omega0 * omega0 + v * v), omega0 + v * v / (2.0 * omega0)};
}

double phase_from_precession(const DriveField& drive, double omega0, double t, int steps) {
    if (steps < 2) throw ValidationError("steps", "need at least 2 panels");
    if (steps % 2 == 1) ++steps;
    const auto excess = [&](double tau) {
        const double v = 2.0 * constants::hbar * std::sqrt(drive.magnitude_sq(tau));
        return instantaneous_frequency(omega0, v).second_order - omega0;
    };
    // Composite Simpson.
    const double h = t / steps;
    double acc = excess(0.0) + excess(t);
    for (int k = 1; k < steps; ++k) acc += (k % 2 == 1 ? 4.0 : 2.0) * excess(k * h);
    return 0.5 * acc * h / 3.0;
}

}  // namespace iontrap::adiabatic
