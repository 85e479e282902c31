#pragma once

// Multipartite entanglement quantifiers for qubit registers: bipartition
// averaged normalized negativity, decaying W states under independent
// reservoirs, the two-exciton X state and the Meyer-Wallach measure.

#include <cstddef>
#include <vector>

#include "fmoent/qlin.hpp"

namespace fmoent {

using QubitSubset = std::vector<std::size_t>;

// Nonequivalent bipartitions of an N-qubit register, grouped by the size m of
// the smaller side. For even N the m = N/2 group keeps only subsets that
// contain qubit 0.
class BipartitionSet {
public:
    explicit BipartitionSet(std::size_t n_qubits);

    std::size_t n_qubits() const { return n_qubits_; }
    std::size_t max_size() const { return groups_.size(); }  // floor(N/2)
    const std::vector<QubitSubset>& of_size(std::size_t m) const;
    std::size_t total() const;

private:
    std::size_t n_qubits_;
    std::vector<std::vector<QubitSubset>> groups_;  // groups_[m-1]
};

inline constexpr std::size_t kMaxBipartitionQubits = 12;

BipartitionSet enumerate_bipartitions(std::size_t n_qubits);

// Throws std::invalid_argument unless rho is Hermitian with unit trace.
void require_density(const CMatrix& rho, std::size_t n_qubits, double tol = 1e-8);

// (2 / (2^m - 1)) * sum of |negative eigenvalues| of the partial transpose,
// m = min(|subset|, N - |subset|). The subset must be nonempty and proper;
// the smaller side is the one transposed.
double normalized_negativity(const CMatrix& rho, std::size_t n_qubits, const QubitSubset& subset);

// Average over m = 1..floor(N/2) of the mean normalized negativity of the
// size-m bipartitions.
double global_entanglement(const CMatrix& rho, std::size_t n_qubits);

StateVector w_state(std::size_t n_qubits);
StateVector ghz_state(std::size_t n_qubits, cplx alpha, cplx beta);

struct WStateParams {
    std::size_t n_qubits = 4;
    cplx u = 1.0;  // survival amplitude shared by every exciton
};

// |u|^2 |W_N><W_N| + (1 - |u|^2) |0..0><0..0|
CMatrix w_state_exciton_rho(const WStateParams& p);
// Same with the roles of |u|^2 and 1 - |u|^2 exchanged.
CMatrix w_state_reservoir_rho(const WStateParams& p);

struct XStateParams {
    double a = 0.0;
    double b = 1.0;
    cplx u1 = 1.0;
    cplx u2 = 1.0;
};

// Two-exciton reduced state of a|00> + b|11> after independent decay, basis
// |00>, |01>, |10>, |11>.
CMatrix x_state_rho(const XStateParams& p);

// Four-qubit global pure state (e1, e2, r1, r2) whose exciton reduction is
// x_state_rho(p). Each decay amplitude v_i is taken real and nonnegative.
StateVector x_state_global(const XStateParams& p);

// (1/N) sum_k 2 (1 - Tr rho_k^2) over the single-qubit reductions.
double meyer_wallach_numeric(const StateVector& psi);

// 2 a^2 b^2 + 4 b^2 |u|^2 |v|^2, the standard closed form.
double meyer_wallach_closed(double a, double b, cplx u);

// 2 a^2 b^2 + 4 b^4 |u|^2 |v|^2, which is what meyer_wallach_numeric returns
// on x_state_global with u1 = u2 = u. Equal to meyer_wallach_closed at b = 1.
double meyer_wallach_direct(double a, double b, cplx u);

}  // namespace fmoent
