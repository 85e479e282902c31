#pragma once

// Dense complex linear algebra over n-qubit registers.
//
// Qubit 0 is the most significant bit of a computational-basis index, so for
// a 3-qubit register the basis state |q0 q1 q2> has index 4*q0 + 2*q1 + q2.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace fmoent {

using cplx = std::complex<double>;

class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols);
    CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static CMatrix identity(std::size_t n);
    static CMatrix diagonal(std::span<const double> values);
    // |psi><psi|
    static CMatrix outer(std::span<const cplx> psi);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const cplx> entries() const { return data_; }
    std::span<cplx> entries() { return data_; }

    cplx trace() const;
    double frobenius_norm() const;
    CMatrix adjoint() const;
    CMatrix transpose() const;

    // max |M - M^dagger| entrywise, zero for Hermitian matrices.
    double hermiticity_error() const;
    bool is_hermitian(double tol = 1e-12) const { return hermiticity_error() <= tol; }

    CMatrix& operator+=(const CMatrix& other);
    CMatrix& operator-=(const CMatrix& other);
    CMatrix& operator*=(cplx scale);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(CMatrix a, cplx s) { return a *= s; }
    friend CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

    bool operator==(const CMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

// Pure state of an n-qubit register.
struct StateVector {
    std::size_t n_qubits = 0;
    std::vector<cplx> amplitudes;

    StateVector() = default;
    StateVector(std::size_t n, std::vector<cplx> amps);

    static StateVector basis(std::size_t n, std::size_t index);

    double norm_squared() const;
    bool is_normalized(double tol = 1e-12) const;
    CMatrix density() const { return CMatrix::outer(amplitudes); }
};

CMatrix kron(const CMatrix& a, const CMatrix& b);
StateVector kron(const StateVector& a, const StateVector& b);

// Traces out every qubit not listed in `keep`. The kept qubits retain their
// relative order (ascending index) in the result.
CMatrix partial_trace(const CMatrix& rho, std::size_t n_qubits,
                      std::span<const std::size_t> keep);

// Transposes the tensor factors belonging to `subset`.
CMatrix partial_transpose(const CMatrix& rho, std::size_t n_qubits,
                          std::span<const std::size_t> subset);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    CMatrix vectors;             // column k pairs with values[k]
};

// Cyclic Jacobi diagonalization of a Hermitian matrix.
//
// Each eigenvector is rephased so its largest-magnitude component is real and
// positive. Equal eigenvalues are ordered by descending lexicographic
// comparison of the rephased components.
EigenDecomposition hermitian_eigen(const CMatrix& m, double hermitian_tol = 1e-10);

// Eigenvalues only (same solver).
std::vector<double> hermitian_eigenvalues(const CMatrix& m, double hermitian_tol = 1e-10);

}  // namespace fmoent
