#include "fmoent/fmo_model.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace fmoent {

namespace {

// Absolute site energies (cm^-1) for BChl 1..7 from three literature fits.
constexpr std::array<double, kSites> kRengEnergies = {12450, 12520, 12210, 12320,
                                                      12550, 12540, 12470};
constexpr std::array<double, kSites> kLorenExptEnergies = {12266, 12496, 12112, 12293,
                                                           12634, 12396, 12457};
constexpr std::array<double, kSites> kWendEnergies = {12315, 12500, 12175, 12405,
                                                      12625, 12430, 12450};

constexpr std::array<std::array<double, kSites>, kSites> kCouplings = {{
    {0.0, -104.1, 5.1, -4.3, 4.7, -15.1, -7.8},
    {-104.1, 0.0, 32.6, 7.1, 5.4, 8.3, 0.8},
    {5.1, 32.6, 0.0, -46.8, 1.0, -8.1, 5.1},
    {-4.3, 7.1, -46.8, 0.0, -70.7, -14.7, -61.5},
    {4.7, 5.4, 1.0, -70.7, 0.0, 89.7, -2.5},
    {-15.1, 8.3, -8.1, -14.7, 89.7, 0.0, 32.7},
    {-7.8, 0.8, 5.1, -61.5, -2.5, 32.7, 0.0},
}};

constexpr std::size_t kReferenceSite = 2;  // BChl 3

}  // namespace

SiteDataset SiteDataset::from_energies(std::string name, const std::array<double, kSites>& energies) {
    SiteDataset d;
    d.name = std::move(name);
    d.site_energies = energies;
    for (std::size_t k = 0; k < kSites; ++k)
        d.energy_diffs[k] = energies[k] - energies[kReferenceSite];
    return d;
}

std::vector<SiteDataset> builtin_datasets() {
    return {
        SiteDataset::from_energies("reng", kRengEnergies),
        SiteDataset::from_energies("lorenExpt", kLorenExptEnergies),
        SiteDataset::from_energies("wend", kWendEnergies),
    };
}

SiteDataset builtin_dataset(const std::string& name) {
    for (auto& d : builtin_datasets())
        if (d.name == name) return d;
    throw std::invalid_argument("unknown site dataset '" + name +
                                "' (expected reng, lorenExpt or wend)");
}

SiteDataset load_site_dataset(std::istream& in, std::string name) {
    std::array<double, kSites> energies{};
    std::array<bool, kSites> seen{};
    std::string line;
    for (int line_no = 1; std::getline(in, line); ++line_no) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        long index = 0;
        double energy = 0.0;
        if (!(fields >> index)) {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            throw std::invalid_argument(name + ":" + std::to_string(line_no) +
                                        ": expected 'bchl_index energy_cm1'");
        }
        std::string extra;
        if (!(fields >> energy) || (fields >> extra))
            throw std::invalid_argument(name + ":" + std::to_string(line_no) +
                                        ": expected 'bchl_index energy_cm1'");
        if (index < 1 || index > static_cast<long>(kSites))
            throw std::invalid_argument(name + ":" + std::to_string(line_no) + ": BChl index " +
                                        std::to_string(index) + " outside 1..7");
        const auto slot = static_cast<std::size_t>(index - 1);
        if (seen[slot])
            throw std::invalid_argument(name + ":" + std::to_string(line_no) + ": BChl " +
                                        std::to_string(index) + " listed twice");
        seen[slot] = true;
        energies[slot] = energy;
    }
    for (std::size_t k = 0; k < kSites; ++k)
        if (!seen[k])
            throw std::invalid_argument(name + ": missing BChl " + std::to_string(k + 1));
    return SiteDataset::from_energies(std::move(name), energies);
}

SiteDataset load_site_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open site-energy file " + path.string());
    return load_site_dataset(in, path.string());
}

const std::array<std::array<double, kSites>, kSites>& site_couplings() { return kCouplings; }

CMatrix build_hamiltonian(const SiteDataset& dataset, double coupling_scale) {
    CMatrix h(kSites, kSites);
    for (std::size_t r = 0; r < kSites; ++r)
        for (std::size_t c = 0; c < kSites; ++c)
            h(r, c) = r == c ? dataset.energy_diffs[r] : coupling_scale * kCouplings[r][c];
    return h;
}

ExcitonTable exciton_table(const CMatrix& h) {
    if (h.rows() != kSites || h.cols() != kSites)
        throw std::invalid_argument("exciton_table: expected a 7x7 Hamiltonian");
    for (std::size_t r = 0; r < kSites; ++r)
        for (std::size_t c = 0; c < kSites; ++c)
            if (h(r, c).imag() != 0.0)
                throw std::invalid_argument("exciton_table: Hamiltonian must be real");
    const auto eig = hermitian_eigen(h);
    ExcitonTable t;
    for (std::size_t k = 0; k < kSites; ++k) {
        t.energies[k] = eig.values[k];
        for (std::size_t s = 0; s < kSites; ++s) t.amplitudes[s][k] = eig.vectors(s, k).real();
    }
    return t;
}

}  // namespace fmoent
