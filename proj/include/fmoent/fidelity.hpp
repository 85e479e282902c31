#pragma once

// Teleportation and information-splitting fidelities of GHZ and W_A resource
// states sent through an amplitude-damping channel with parameter p.

#include <span>
#include <string_view>
#include <vector>

#include "fmoent/reservoir.hpp"

namespace fmoent {

enum class Protocol { ghz_teleport, w_teleport, ghz_split, w_split };

std::string_view to_string(Protocol p);
Protocol parse_protocol(std::string_view name);

inline constexpr double kClassicalFidelity = 2.0 / 3.0;

double f_ghz_teleport(double p, unsigned n_parties);
double f_w_teleport(double p);
double f_ghz_split(double p, unsigned n_parties);
double f_w_split(double p);

// Dispatches on protocol; n_parties is ignored by the W_A formulas.
double fidelity(Protocol protocol, double p, unsigned n_parties);

struct FidelitySample {
    double t_ps;
    double damping;
    double fidelity;
};

struct FidelityCurve {
    Protocol protocol;
    unsigned n_parties;
    std::vector<FidelitySample> samples;
};

FidelityCurve fidelity_vs_time(Protocol protocol, const ReservoirParams& reservoir,
                               unsigned n_parties, std::span<const double> t_grid,
                               const UnitSystem& units = {});

}  // namespace fmoent
