#pragma once

// Seven-site exciton model of one FMO monomer (P. aestuarii).

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fmoent/qlin.hpp"

namespace fmoent {

inline constexpr std::size_t kSites = 7;

// Site energies of BChl 1..7 in cm^-1, indexed by BChl number minus one.
struct SiteDataset {
    std::string name;
    std::array<double, kSites> site_energies{};
    std::array<double, kSites> energy_diffs{};  // relative to BChl 3

    // Fills energy_diffs from site_energies.
    static SiteDataset from_energies(std::string name, const std::array<double, kSites>& energies);
};

std::vector<SiteDataset> builtin_datasets();

// Looks up "reng", "lorenExpt" or "wend"; throws std::invalid_argument otherwise.
SiteDataset builtin_dataset(const std::string& name);

// Reads `bchl_index energy_cm1` rows (1-based BChl index, '#' comments).
// Every BChl 1..7 must appear exactly once.
SiteDataset load_site_dataset(std::istream& in, std::string name);
SiteDataset load_site_dataset(const std::filesystem::path& path);

// Inter-site couplings (cm^-1, zero diagonal), shared by every dataset.
const std::array<std::array<double, kSites>, kSites>& site_couplings();

// Site-basis exciton Hamiltonian: diagonal from energy_diffs, off-diagonal
// from site_couplings() scaled by `coupling_scale`.
CMatrix build_hamiltonian(const SiteDataset& dataset, double coupling_scale = 1.0);

struct ExcitonTable {
    std::array<double, kSites> energies{};  // cm^-1, ascending
    // amplitudes[site][k]: amplitude of exciton k on BChl site+1
    std::array<std::array<double, kSites>, kSites> amplitudes{};
};

ExcitonTable exciton_table(const CMatrix& h);

}  // namespace fmoent
