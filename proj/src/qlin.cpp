#include "fmoent/qlin.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fmoent {

namespace {

std::size_t checked_dim(std::size_t n_qubits) {
    if (n_qubits >= 8 * sizeof(std::size_t) / 2)
        throw std::invalid_argument("qubit count too large: " + std::to_string(n_qubits));
    return std::size_t{1} << n_qubits;
}

void require_register(const CMatrix& rho, std::size_t n_qubits, const char* who) {
    const std::size_t dim = checked_dim(n_qubits);
    if (rho.rows() != dim || rho.cols() != dim)
        throw std::invalid_argument(std::string(who) + ": matrix is " + std::to_string(rho.rows()) +
                                    "x" + std::to_string(rho.cols()) + ", expected " +
                                    std::to_string(dim) + "x" + std::to_string(dim));
}

// Bit mask with one bit per listed qubit (qubit 0 = most significant).
std::size_t qubit_mask(std::size_t n_qubits, std::span<const std::size_t> qubits, const char* who) {
    std::size_t mask = 0;
    for (std::size_t q : qubits) {
        if (q >= n_qubits)
            throw std::invalid_argument(std::string(who) + ": qubit index " + std::to_string(q) +
                                        " out of range for " + std::to_string(n_qubits) +
                                        " qubits");
        const std::size_t bit = std::size_t{1} << (n_qubits - 1 - q);
        if (mask & bit)
            throw std::invalid_argument(std::string(who) + ": duplicate qubit index " +
                                        std::to_string(q));
        mask |= bit;
    }
    return mask;
}

// Scatters the low bits of `packed` onto the set bits of `mask`, highest first.
std::size_t deposit_bits(std::size_t packed, std::size_t mask) {
    std::size_t out = 0;
    for (std::size_t bit = std::size_t{1}; mask != 0; bit <<= 1) {
        const std::size_t lowest = mask & (~mask + 1);
        if (packed & bit) out |= lowest;
        mask &= mask - 1;
    }
    return out;
}

double off_diagonal_norm(const CMatrix& a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (r != c) s += std::norm(a(r, c));
    return std::sqrt(s);
}

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalTol = 1e-13;

// Diagonalizes `a` in place; accumulates the rotations into `v` when given.
void jacobi_diagonalize(CMatrix& a, CMatrix* v) {
    const std::size_t n = a.rows();
    const double scale = std::max(1.0, a.frobenius_norm());
    for (std::size_t k = 0; k < n; ++k) a(k, k) = a(k, k).real();

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) < kOffDiagonalTol * scale) return;
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Negligible against both diagonal entries: drop it.
                if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
                    std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
                    a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                rotated = true;

                // Rephase q so the (p,q) element is real, then a real rotation.
                const cplx phase = std::conj(apq) / mag;  // e^{-i phi}
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // U restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                const cplx upp = c, upq = s, uqp = -s * phase, uqq = c * phase;

                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                if (v) {
                    CMatrix& vm = *v;
                    for (std::size_t k = 0; k < n; ++k) {
                        const cplx vkp = vm(k, p), vkq = vm(k, q);
                        vm(k, p) = vkp * upp + vkq * uqp;
                        vm(k, q) = vkp * upq + vkq * uqq;
                    }
                }
            }
        }
        if (!rotated) return;
    }
    if (off_diagonal_norm(a) >= kOffDiagonalTol * scale)
        throw std::runtime_error("hermitian_eigen: Jacobi iteration did not converge");
}

void require_hermitian(const CMatrix& m, double tol) {
    if (!m.is_square())
        throw std::invalid_argument("hermitian_eigen: matrix is not square");
    const double err = m.hermiticity_error();
    if (err > tol)
        throw std::invalid_argument("hermitian_eigen: matrix is not Hermitian (max |M - M^H| = " +
                                    std::to_string(err) + ")");
}

// true when column a should precede column b among equal eigenvalues.
bool lexicographically_greater(const CMatrix& v, std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < v.rows(); ++r) {
        const cplx x = v(r, a), y = v(r, b);
        if (x.real() != y.real()) return x.real() > y.real();
        if (x.imag() != y.imag()) return x.imag() > y.imag();
    }
    return false;
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw std::invalid_argument("CMatrix: entry count " + std::to_string(data_.size()) +
                                    " does not match " + std::to_string(rows_) + "x" +
                                    std::to_string(cols_));
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw std::invalid_argument("CMatrix: ragged initializer");
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1.0;
    return m;
}

CMatrix CMatrix::diagonal(std::span<const double> values) {
    CMatrix m(values.size(), values.size());
    for (std::size_t k = 0; k < values.size(); ++k) m(k, k) = values[k];
    return m;
}

CMatrix CMatrix::outer(std::span<const cplx> psi) {
    const std::size_t n = psi.size();
    CMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) m(r, c) = psi[r] * std::conj(psi[c]);
    return m;
}

cplx CMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t k = 0; k < std::min(rows_, cols_); ++k) t += (*this)(k, k);
    return t;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& x : data_) s += std::norm(x);
    return std::sqrt(s);
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix m(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
}

double CMatrix::hermiticity_error() const {
    if (!is_square()) return INFINITY;
    double err = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            err = std::max(err, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return err;
}

CMatrix& CMatrix::operator+=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("CMatrix +=: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("CMatrix -=: shape mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(cplx scale) {
    for (cplx& x : data_) x *= scale;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("CMatrix *: shape mismatch");
    CMatrix m(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx ark = a(r, k);
            if (ark == cplx{}) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) m(r, c) += ark * b(k, c);
        }
    return m;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double d = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        d = std::max(d, std::abs(a.entries()[k] - b.entries()[k]));
    return d;
}

StateVector::StateVector(std::size_t n, std::vector<cplx> amps)
    : n_qubits(n), amplitudes(std::move(amps)) {
    if (amplitudes.size() != checked_dim(n))
        throw std::invalid_argument("StateVector: " + std::to_string(amplitudes.size()) +
                                    " amplitudes for " + std::to_string(n) + " qubits");
}

StateVector StateVector::basis(std::size_t n, std::size_t index) {
    std::vector<cplx> amps(checked_dim(n));
    if (index >= amps.size()) throw std::invalid_argument("StateVector::basis: index out of range");
    amps[index] = 1.0;
    return {n, std::move(amps)};
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const cplx& a : amplitudes) s += std::norm(a);
    return s;
}

bool StateVector::is_normalized(double tol) const { return std::abs(norm_squared() - 1.0) <= tol; }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar)
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            const cplx x = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); ++br)
                for (std::size_t bc = 0; bc < b.cols(); ++bc)
                    m(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
        }
    return m;
}

StateVector kron(const StateVector& a, const StateVector& b) {
    std::vector<cplx> amps(a.amplitudes.size() * b.amplitudes.size());
    for (std::size_t i = 0; i < a.amplitudes.size(); ++i)
        for (std::size_t j = 0; j < b.amplitudes.size(); ++j)
            amps[i * b.amplitudes.size() + j] = a.amplitudes[i] * b.amplitudes[j];
    return {a.n_qubits + b.n_qubits, std::move(amps)};
}

CMatrix partial_trace(const CMatrix& rho, std::size_t n_qubits, std::span<const std::size_t> keep) {
    require_register(rho, n_qubits, "partial_trace");
    const std::size_t dim = std::size_t{1} << n_qubits;
    const std::size_t keep_mask = qubit_mask(n_qubits, keep, "partial_trace");
    const std::size_t traced_mask = (dim - 1) & ~keep_mask;
    const std::size_t n_keep = static_cast<std::size_t>(std::popcount(keep_mask));
    const std::size_t keep_dim = std::size_t{1} << n_keep;
    const std::size_t traced_dim = dim / keep_dim;

    std::vector<std::size_t> keep_index(keep_dim), traced_index(traced_dim);
    for (std::size_t k = 0; k < keep_dim; ++k) keep_index[k] = deposit_bits(k, keep_mask);
    for (std::size_t k = 0; k < traced_dim; ++k) traced_index[k] = deposit_bits(k, traced_mask);

    CMatrix out(keep_dim, keep_dim);
    for (std::size_t r = 0; r < keep_dim; ++r)
        for (std::size_t c = 0; c < keep_dim; ++c) {
            cplx s = 0.0;
            for (std::size_t t : traced_index) s += rho(keep_index[r] | t, keep_index[c] | t);
            out(r, c) = s;
        }
    return out;
}

CMatrix partial_transpose(const CMatrix& rho, std::size_t n_qubits,
                          std::span<const std::size_t> subset) {
    require_register(rho, n_qubits, "partial_transpose");
    const std::size_t dim = std::size_t{1} << n_qubits;
    const std::size_t mask = qubit_mask(n_qubits, subset, "partial_transpose");
    CMatrix out(dim, dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) {
            // swap the subset bits between row and column index
            const std::size_t diff = (r ^ c) & mask;
            out(r ^ diff, c ^ diff) = rho(r, c);
        }
    return out;
}

EigenDecomposition hermitian_eigen(const CMatrix& m, double hermitian_tol) {
    require_hermitian(m, hermitian_tol);
    const std::size_t n = m.rows();
    CMatrix a = m;
    CMatrix v = CMatrix::identity(n);
    jacobi_diagonalize(a, &v);

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t lead = 0;
        double best = -1.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double mag = std::abs(v(r, k));
            // first component within rounding of the maximum wins
            if (mag > best * (1.0 + 1e-12) + 1e-15) {
                best = mag;
                lead = r;
            }
        }
        const cplx phase = std::conj(v(lead, k)) / std::abs(v(lead, k));
        for (std::size_t r = 0; r < n; ++r) v(r, k) *= phase;
        v(lead, k) = v(lead, k).real();
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    const double tie_tol = 1e-12 * std::max(1.0, m.frobenius_norm());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return a(x, x).real() < a(y, y).real();
    });
    // Runs of equal eigenvalues are reordered by their vectors.
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && a(order[hi], order[hi]).real() - a(order[hi - 1], order[hi - 1]).real() <=
                             tie_tol)
            ++hi;
        std::sort(order.begin() + static_cast<std::ptrdiff_t>(lo),
                  order.begin() + static_cast<std::ptrdiff_t>(hi),
                  [&](std::size_t x, std::size_t y) { return lexicographically_greater(v, x, y); });
        lo = hi;
    }

    EigenDecomposition out{std::vector<double>(n), CMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const CMatrix& m, double hermitian_tol) {
    require_hermitian(m, hermitian_tol);
    CMatrix a = m;
    jacobi_diagonalize(a, nullptr);
    std::vector<double> values(a.rows());
    for (std::size_t k = 0; k < a.rows(); ++k) values[k] = a(k, k).real();
    std::sort(values.begin(), values.end());
    return values;
}

}  // namespace fmoent
