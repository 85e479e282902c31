#pragma once

// Lorentzian phonon reservoir and the survival amplitude u(t) of an excitonic
// qubit decaying into it.
//
// Parameters are given in cm^-1 and time in ps. Rates are converted to rad/ps
// by UnitSystem::angular_conversion before any time-dependent evaluation.

#include <complex>
#include <span>
#include <vector>

namespace fmoent {

using cplx = std::complex<double>;

struct UnitSystem {
    // 2*pi*c*(1 ps), c = 0.0299792458 cm/ps
    static constexpr double kDefaultAngularConversion = 0.18836515673;

    double angular_conversion = kDefaultAngularConversion;  // rad/ps per cm^-1
};

struct ReservoirParams {
    double gamma0 = 0.0;       // cm^-1, coupling strength (tau_R = 1/gamma0)
    double delta_omega = 0.0;  // cm^-1, Lorentzian FWHM (tau_B = 2/delta_omega)
    double delta = 0.0;        // cm^-1, peak detuning from omega0
    double omega0 = 12210.0;   // cm^-1, enters observables only through delta

    static ReservoirParams from_half_width(double gamma0, double half_width, double delta = 0.0);

    double half_width() const { return 0.5 * delta_omega; }

    // Throws std::invalid_argument unless gamma0 >= 0 and delta_omega > 0.
    // gamma0 == 0 is accepted as the decoupled limit.
    void validate() const;
};

// J(omega) in cm^-1, omega in cm^-1.
double spectral_density(const ReservoirParams& p, double omega);

cplx amplitude(const ReservoirParams& p, double t_ps, const UnitSystem& units = {});

// u(t) given the decay constant b = half_width - i*delta and a chosen root xi
// of xi^2 = b^2 - gamma0*delta_omega, everything already in rad/ps. Either
// root gives the same value.
cplx amplitude_from_root(cplx b, cplx xi, double t_ps);

// Memory-kernel prefactor used by the ODE oracle.
enum class OracleKernel {
    // (gamma0*delta_omega/4) exp(-b tau): the kernel for which the closed form
    // of amplitude() is exact.
    consistent,
    // (gamma0/2) * b * exp(-b tau): an alternative prefactor found in the
    // integro-differential equation. Agrees with `consistent` when delta = 0.
    gamma_b,
};

struct OracleOptions {
    double max_step_ps = 1e-4;
    OracleKernel kernel = OracleKernel::consistent;
};

// Integrates u' = -k z, z' = u - b z with fixed-step RK4 from u(0)=1, z(0)=0
// and samples u on an ascending grid starting at 0.
std::vector<cplx> amplitude_ode_oracle(const ReservoirParams& p, std::span<const double> t_grid,
                                       const OracleOptions& options = {},
                                       const UnitSystem& units = {});

// 2|u|^2 - 1
double population_difference(const ReservoirParams& p, double t_ps, const UnitSystem& units = {});

// Amplitude-damping channel parameter 1 - |u|^2, clamped to [0, 1].
double damping(const ReservoirParams& p, double t_ps, const UnitSystem& units = {});

}  // namespace fmoent
