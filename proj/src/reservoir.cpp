#include "fmoent/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace fmoent {

namespace {

constexpr double kSeriesThreshold = 1e-6;

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
        throw std::invalid_argument("time must be finite and >= 0, got " + std::to_string(t));
}

struct AngularRates {
    cplx b;         // half_width - i delta
    double kernel;  // gamma0 * delta_omega / 4
    double coupling;
};

AngularRates to_angular(const ReservoirParams& p, const UnitSystem& units) {
    p.validate();
    const double w = units.angular_conversion;
    const double hw = 0.5 * p.delta_omega * w;
    const double g = p.gamma0 * w;
    const double dw = p.delta_omega * w;
    return {cplx{hw, -p.delta * w}, 0.25 * g * dw, g * dw};
}

}  // namespace

ReservoirParams ReservoirParams::from_half_width(double gamma0, double half_width, double delta) {
    ReservoirParams p;
    p.gamma0 = gamma0;
    p.delta_omega = 2.0 * half_width;
    p.delta = delta;
    return p;
}

void ReservoirParams::validate() const {
    if (!(gamma0 >= 0.0) || !std::isfinite(gamma0))
        throw std::invalid_argument("gamma0 must be >= 0, got " + std::to_string(gamma0));
    if (!(delta_omega > 0.0) || !std::isfinite(delta_omega))
        throw std::invalid_argument("delta_omega must be > 0, got " + std::to_string(delta_omega));
    if (!std::isfinite(delta))
        throw std::invalid_argument("delta must be finite");
}

double spectral_density(const ReservoirParams& p, double omega) {
    const double hw = p.half_width();
    const double x = p.omega0 - p.delta - omega;
    return p.gamma0 * hw * hw / (2.0 * std::numbers::pi * (x * x + hw * hw));
}

cplx amplitude_from_root(cplx b, cplx xi, double t) {
    if (std::abs(xi * t) < kSeriesThreshold) {
        const cplx envelope = std::exp(-0.5 * b * t);
        // cosh(x) ~ 1 + x^2/2, sinh(xi t/2)/xi ~ t/2 + xi^2 t^3/48
        const cplx xi2 = xi * xi;
        return envelope * (1.0 + xi2 * t * t / 8.0 + b * (0.5 * t + xi2 * t * t * t / 48.0));
    }
    // e^{-bt/2}[cosh(xi t/2) + (b/xi) sinh(xi t/2)] split into its two
    // exponential modes so large |xi t| cannot overflow cosh/sinh.
    const cplx ratio = b / xi;
    return 0.5 * (1.0 + ratio) * std::exp(0.5 * (xi - b) * t) +
           0.5 * (1.0 - ratio) * std::exp(-0.5 * (xi + b) * t);
}

cplx amplitude(const ReservoirParams& p, double t, const UnitSystem& units) {
    require_time(t);
    const AngularRates r = to_angular(p, units);
    const cplx xi = std::sqrt(r.b * r.b - r.coupling);
    return amplitude_from_root(r.b, xi, t);
}

std::vector<cplx> amplitude_ode_oracle(const ReservoirParams& p, std::span<const double> t_grid,
                                       const OracleOptions& options, const UnitSystem& units) {
    if (!(options.max_step_ps > 0.0))
        throw std::invalid_argument("amplitude_ode_oracle: max_step_ps must be > 0");
    if (!t_grid.empty() && t_grid.front() != 0.0)
        throw std::invalid_argument("amplitude_ode_oracle: time grid must start at 0");
    for (std::size_t k = 1; k < t_grid.size(); ++k)
        if (!(t_grid[k] > t_grid[k - 1]))
            throw std::invalid_argument("amplitude_ode_oracle: time grid not ascending at index " +
                                        std::to_string(k));

    const AngularRates r = to_angular(p, units);
    const cplx k = options.kernel == OracleKernel::consistent
                       ? cplx{r.kernel}
                       : 0.5 * p.gamma0 * units.angular_conversion * r.b;
    const cplx b = r.b;

    auto rhs = [&](cplx u, cplx z, cplx& du, cplx& dz) {
        du = -k * z;
        dz = u - b * z;
    };

    std::vector<cplx> out;
    out.reserve(t_grid.size());
    cplx u = 1.0, z = 0.0;
    double t = 0.0;
    for (double target : t_grid) {
        const double span = target - t;
        const auto steps = static_cast<long>(std::ceil(span / options.max_step_ps - 1e-9));
        const double h = steps > 0 ? span / static_cast<double>(steps) : 0.0;
        for (long s = 0; s < steps; ++s) {
            cplx k1u, k1z, k2u, k2z, k3u, k3z, k4u, k4z;
            rhs(u, z, k1u, k1z);
            rhs(u + 0.5 * h * k1u, z + 0.5 * h * k1z, k2u, k2z);
            rhs(u + 0.5 * h * k2u, z + 0.5 * h * k2z, k3u, k3z);
            rhs(u + h * k3u, z + h * k3z, k4u, k4z);
            u += h / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
            z += h / 6.0 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
        }
        t = target;
        out.push_back(u);
    }
    return out;
}

double population_difference(const ReservoirParams& p, double t, const UnitSystem& units) {
    return 2.0 * std::norm(amplitude(p, t, units)) - 1.0;
}

double damping(const ReservoirParams& p, double t, const UnitSystem& units) {
    return std::clamp(1.0 - std::norm(amplitude(p, t, units)), 0.0, 1.0);
}

}  // namespace fmoent
