#pragma once

#include <complex>
#include <string>
#include <utility>
#include <variant>
#include <vector>

// Driven two-level system H = (1/2) hbar omega0 sigma_z + hbar f(t) . sigma,
// with f = (f_x, f_y, 0). Amplitudes are kept in the frame rotating with the
// bare precession:  psi = u+ e^{-i omega0 t/2}|+> + u- e^{+i omega0 t/2}|->.
namespace iontrap::adiabatic {

using Amplitudes = std::pair<std::complex<double>, std::complex<double>>;

/// f(t) = eps (cos(rate t), sin(rate t), 0).
struct CircularDrive {
    double amplitude = 0.0;
    double rotation_rate = 0.0;
};

/// f(t) = (f_x, f_y, 0), constant.
struct ConstantDrive {
    double fx = 0.0;
    double fy = 0.0;
};

/// Samples of (t, f_x, f_y), linearly interpolated; zero outside the table.
struct SampledDrive {
    std::vector<double> t;
    std::vector<double> fx;
    std::vector<double> fy;
};

class DriveField {
public:
    DriveField() = default;
    DriveField(CircularDrive d);
    DriveField(ConstantDrive d);
    DriveField(SampledDrive d);

    static DriveField none() { return DriveField(ConstantDrive{}); }

    /// f_+ = f_x + i f_y.
    std::complex<double> f_plus(double t) const;
    double magnitude_sq(double t) const;
    bool constant_magnitude() const;

    /// Largest |f| and fastest angular rate of change, for the regime flags.
    double peak_amplitude() const;
    double peak_rate() const;

    /// Human-readable warnings if |f|/omega0 or rate/omega0 reaches 0.1.
    std::vector<std::string> regime_warnings(double omega0) const;

    const auto& form() const { return form_; }

private:
    std::variant<ConstantDrive, CircularDrive, SampledDrive> form_;
};

struct SpinTrajectory {
    double omega0 = 0.0;
    std::vector<double> times;
    std::vector<std::complex<double>> u_plus;
    std::vector<std::complex<double>> u_minus;
    double max_norm_drift = 0.0;   // max | |u+|^2 + |u-|^2 - 1 | over all steps
};

struct IntegrationOptions {
    int stride = 100;               // store every stride-th step
    double max_norm_drift = 1e-6;   // AccuracyError above this
};

/// Integrates i du+/dt = e^{i omega0 t} f_-(t) u-,  i du-/dt = e^{-i omega0 t} f_+(t) u+
/// with a fixed-step Dormand-Prince 5(4) stepper. Requires dt <= 0.1/omega0
/// and a normalized initial state.
SpinTrajectory integrate_tls(double omega0, const DriveField& drive, Amplitudes initial,
                             double t_end, double dt, const IntegrationOptions& options = {});

/// Phi(t) = integral_0^t |f|^2 / omega0. Closed form for constant-magnitude
/// drives, exact piecewise Simpson for sampled tables.
double adiabatic_phase(const DriveField& drive, double omega0, double t);

/// Re <psi0(t)|psi(t)>, psi0 evolving without drive. Requires u+(0) = u-(0) = 1/sqrt 2.
std::vector<double> overlap_fidelity(const SpinTrajectory& trajectory, double omega0);

struct PrecessionFrequency {
    double exact = 0.0;
    double second_order = 0.0;
};

/// (omega0^2 + V^2/hbar^2)^(1/2) and omega0 + V^2/(2 hbar^2 omega0); V in joules.
PrecessionFrequency instantaneous_frequency(double omega0, double coupling_energy);

/// Half the excess of integral_0^t omega0' over omega0 t, with the perturbation
/// V = 2 hbar |f| inserted in the second-order precession frequency.
/// Composite Simpson quadrature with `steps` panels.
double phase_from_precession(const DriveField& drive, double omega0, double t, int steps = 4096);

}  // namespace iontrap::adiabatic
