#include "fmoent/fidelity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fmoent {

namespace {

void require_damping(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("damping parameter must lie in [0, 1], got " +
                                    std::to_string(p));
}

void require_parties(unsigned n) {
    if (n < 2) throw std::invalid_argument("GHZ fidelities need N >= 2, got " + std::to_string(n));
}

}  // namespace

std::string_view to_string(Protocol p) {
    switch (p) {
        case Protocol::ghz_teleport: return "ghz_teleport";
        case Protocol::w_teleport: return "w_teleport";
        case Protocol::ghz_split: return "ghz_split";
        case Protocol::w_split: return "w_split";
    }
    return "?";
}

Protocol parse_protocol(std::string_view name) {
    for (Protocol p : {Protocol::ghz_teleport, Protocol::w_teleport, Protocol::ghz_split,
                       Protocol::w_split})
        if (to_string(p) == name) return p;
    throw std::invalid_argument("unknown protocol '" + std::string(name) + "'");
}

double f_ghz_teleport(double p, unsigned n) {
    require_damping(p);
    require_parties(n);
    const double q = 1.0 - p;
    const double nm1 = static_cast<double>(n - 1);
    return (2.0 + std::pow(q, nm1) * (2.0 - p) + 2.0 * std::pow(q, 0.5 * n) +
            std::pow(p, nm1) * (1.0 + p)) /
           6.0;
}

double f_w_teleport(double p) {
    require_damping(p);
    return (3.0 - 2.0 * p + p * p) / 3.0;
}

double f_ghz_split(double p, unsigned n) {
    require_damping(p);
    require_parties(n);
    const double q = 1.0 - p;
    return (2.0 - p * q + std::pow(q, 0.5 * n)) / 3.0;
}

double f_w_split(double p) {
    require_damping(p);
    return 1.0 - p / 3.0;
}

double fidelity(Protocol protocol, double p, unsigned n) {
    switch (protocol) {
        case Protocol::ghz_teleport: return f_ghz_teleport(p, n);
        case Protocol::w_teleport: return f_w_teleport(p);
        case Protocol::ghz_split: return f_ghz_split(p, n);
        case Protocol::w_split: return f_w_split(p);
    }
    throw std::invalid_argument("invalid protocol");
}

FidelityCurve fidelity_vs_time(Protocol protocol, const ReservoirParams& reservoir, unsigned n,
                               std::span<const double> t_grid, const UnitSystem& units) {
    for (std::size_t k = 1; k < t_grid.size(); ++k)
        if (!(t_grid[k] > t_grid[k - 1]))
            throw std::invalid_argument("fidelity_vs_time: time grid not ascending at index " +
                                        std::to_string(k));
    FidelityCurve curve{protocol, n, {}};
    curve.samples.reserve(t_grid.size());
    for (double t : t_grid) {
        const double p = damping(reservoir, t, units);
        curve.samples.push_back({t, p, fidelity(protocol, p, n)});
    }
    return curve;
}

}  // namespace fmoent
