#include "fmoent/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fmoent {

namespace {

constexpr double kAmplitudeTol = 1e-12;

void next_combinations(std::size_t n, std::size_t m, QubitSubset& current,
                       std::size_t start, std::vector<QubitSubset>& out) {
    if (current.size() == m) {
        out.push_back(current);
        return;
    }
    for (std::size_t q = start; q + (m - current.size()) <= n; ++q) {
        current.push_back(q);
        next_combinations(n, m, current, q + 1, out);
        current.pop_back();
    }
}

double survival(cplx u, const char* who) {
    const double p = std::norm(u);
    if (!(p <= 1.0 + kAmplitudeTol))
        throw std::invalid_argument(std::string(who) + ": |u| exceeds 1 (|u|^2 = " +
                                    std::to_string(p) + ")");
    return std::min(p, 1.0);
}

void require_normalized_coefficients(double a, double b, const char* who) {
    if (std::abs(a * a + b * b - 1.0) > kAmplitudeTol)
        throw std::invalid_argument(std::string(who) + ": a^2 + b^2 must equal 1 (got " +
                                    std::to_string(a * a + b * b) + ")");
}

CMatrix mix_w_and_vacuum(std::size_t n, double w_weight) {
    CMatrix rho = w_state(n).density() * cplx{w_weight};
    rho(0, 0) += 1.0 - w_weight;
    return rho;
}

}  // namespace

BipartitionSet::BipartitionSet(std::size_t n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 2 || n_qubits > kMaxBipartitionQubits)
        throw std::invalid_argument("enumerate_bipartitions: N must be in 2.." +
                                    std::to_string(kMaxBipartitionQubits) + ", got " +
                                    std::to_string(n_qubits));
    const std::size_t half = n_qubits / 2;
    groups_.resize(half);
    for (std::size_t m = 1; m <= half; ++m) {
        std::vector<QubitSubset> all;
        QubitSubset scratch;
        next_combinations(n_qubits, m, scratch, 0, all);
        if (2 * m == n_qubits)
            std::erase_if(all, [](const QubitSubset& s) { return s.front() != 0; });
        groups_[m - 1] = std::move(all);
    }
}

const std::vector<QubitSubset>& BipartitionSet::of_size(std::size_t m) const {
    if (m < 1 || m > groups_.size())
        throw std::out_of_range("BipartitionSet::of_size: no group of size " + std::to_string(m));
    return groups_[m - 1];
}

std::size_t BipartitionSet::total() const {
    std::size_t t = 0;
    for (const auto& g : groups_) t += g.size();
    return t;
}

BipartitionSet enumerate_bipartitions(std::size_t n_qubits) { return BipartitionSet(n_qubits); }

void require_density(const CMatrix& rho, std::size_t n_qubits, double tol) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (rho.rows() != dim || rho.cols() != dim)
        throw std::invalid_argument("density matrix has shape " + std::to_string(rho.rows()) + "x" +
                                    std::to_string(rho.cols()) + ", expected " +
                                    std::to_string(dim) + "x" + std::to_string(dim));
    if (const double err = rho.hermiticity_error(); err > tol)
        throw std::invalid_argument("density matrix is not Hermitian (max |rho - rho^H| = " +
                                    std::to_string(err) + ")");
    if (const cplx tr = rho.trace(); std::abs(tr - 1.0) > tol)
        throw std::invalid_argument("density matrix trace is " + std::to_string(tr.real()) +
                                    ", expected 1");
}

double normalized_negativity(const CMatrix& rho, std::size_t n_qubits, const QubitSubset& subset) {
    require_density(rho, n_qubits);
    QubitSubset side = subset;
    std::sort(side.begin(), side.end());
    if (std::adjacent_find(side.begin(), side.end()) != side.end())
        throw std::invalid_argument("normalized_negativity: duplicate qubit in subset");
    if (side.empty() || side.size() >= n_qubits || side.back() >= n_qubits)
        throw std::invalid_argument("normalized_negativity: subset must be a nonempty proper "
                                    "subset of the register");
    if (2 * side.size() > n_qubits) {
        QubitSubset complement;
        for (std::size_t q = 0; q < n_qubits; ++q)
            if (!std::binary_search(side.begin(), side.end(), q)) complement.push_back(q);
        side = std::move(complement);
    }
    const std::size_t m = side.size();

    const auto values = hermitian_eigenvalues(partial_transpose(rho, n_qubits, side));
    double negative = 0.0;
    for (double v : values)
        if (v < 0.0) negative -= v;
    return 2.0 / static_cast<double>((std::size_t{1} << m) - 1) * negative;
}

double global_entanglement(const CMatrix& rho, std::size_t n_qubits) {
    require_density(rho, n_qubits);
    const BipartitionSet cuts(n_qubits);
    double total = 0.0;
    for (std::size_t m = 1; m <= cuts.max_size(); ++m) {
        const auto& group = cuts.of_size(m);
        double sum = 0.0;
        for (const auto& s : group) sum += normalized_negativity(rho, n_qubits, s);
        total += sum / static_cast<double>(group.size());
    }
    return total / static_cast<double>(cuts.max_size());
}

StateVector w_state(std::size_t n) {
    if (n < 1) throw std::invalid_argument("w_state: need at least one qubit");
    std::vector<cplx> amps(std::size_t{1} << n);
    const double c = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t q = 0; q < n; ++q) amps[std::size_t{1} << (n - 1 - q)] = c;
    return {n, std::move(amps)};
}

StateVector ghz_state(std::size_t n, cplx alpha, cplx beta) {
    if (n < 1) throw std::invalid_argument("ghz_state: need at least one qubit");
    std::vector<cplx> amps(std::size_t{1} << n);
    amps.front() = alpha;
    amps.back() = beta;
    return {n, std::move(amps)};
}

CMatrix w_state_exciton_rho(const WStateParams& p) {
    return mix_w_and_vacuum(p.n_qubits, survival(p.u, "w_state_exciton_rho"));
}

CMatrix w_state_reservoir_rho(const WStateParams& p) {
    return mix_w_and_vacuum(p.n_qubits, 1.0 - survival(p.u, "w_state_reservoir_rho"));
}

CMatrix x_state_rho(const XStateParams& p) {
    require_normalized_coefficients(p.a, p.b, "x_state_rho");
    const double s1 = survival(p.u1, "x_state_rho"), s2 = survival(p.u2, "x_state_rho");
    const double d1 = 1.0 - s1, d2 = 1.0 - s2;
    const double b2 = p.b * p.b;
    CMatrix rho(4, 4);
    rho(0, 0) = p.a * p.a + b2 * d1 * d2;
    rho(1, 1) = b2 * d1 * s2;
    rho(2, 2) = b2 * s1 * d2;
    rho(3, 3) = b2 * s1 * s2;
    rho(0, 3) = p.a * p.b * std::conj(p.u1 * p.u2);
    rho(3, 0) = std::conj(rho(0, 3));
    return rho;
}

StateVector x_state_global(const XStateParams& p) {
    require_normalized_coefficients(p.a, p.b, "x_state_global");
    const double v1 = std::sqrt(1.0 - survival(p.u1, "x_state_global"));
    const double v2 = std::sqrt(1.0 - survival(p.u2, "x_state_global"));
    // index = 8 e1 + 4 e2 + 2 r1 + r2
    std::vector<cplx> amps(16);
    amps[0b0000] = p.a;
    amps[0b1100] = p.b * p.u1 * p.u2;
    amps[0b1001] = p.b * p.u1 * v2;
    amps[0b0110] = p.b * v1 * p.u2;
    amps[0b0011] = p.b * v1 * v2;
    return {4, std::move(amps)};
}

double meyer_wallach_numeric(const StateVector& psi) {
    if (psi.n_qubits < 1) throw std::invalid_argument("meyer_wallach_numeric: empty register");
    if (!psi.is_normalized(1e-10))
        throw std::invalid_argument("meyer_wallach_numeric: state is not normalized (norm^2 = " +
                                    std::to_string(psi.norm_squared()) + ")");
    const CMatrix rho = psi.density();
    double sum = 0.0;
    for (std::size_t k = 0; k < psi.n_qubits; ++k) {
        const std::size_t keep[] = {k};
        const CMatrix r = partial_trace(rho, psi.n_qubits, keep);
        const double purity = std::norm(r(0, 0)) + std::norm(r(1, 1)) + 2.0 * std::norm(r(0, 1));
        sum += 2.0 * (1.0 - purity);
    }
    return sum / static_cast<double>(psi.n_qubits);
}

double meyer_wallach_closed(double a, double b, cplx u) {
    const double s = survival(u, "meyer_wallach_closed");
    return 2.0 * a * a * b * b + 4.0 * b * b * s * (1.0 - s);
}

double meyer_wallach_direct(double a, double b, cplx u) {
    const double s = survival(u, "meyer_wallach_direct");
    return 2.0 * a * a * b * b + 4.0 * b * b * b * b * s * (1.0 - s);
}

}  // namespace fmoent
