// numkernel.cpp: Jacobi eigensolver and matrix exponential

#include "ergokit/numkernel.hpp"

#include "ergokit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace ergokit {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw DimensionMismatch("ComplexMatrix: dimension must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> row_major)
    : dim_(dim), data_(std::move(row_major)) {
    if (dim == 0) throw DimensionMismatch("ComplexMatrix: dimension must be >= 1");
    if (data_.size() != dim * dim) {
        throw DimensionMismatch("ComplexMatrix: expected " + std::to_string(dim * dim) +
                                " entries, got " + std::to_string(data_.size()));
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : ComplexMatrix(rows.size()) {
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != dim_) throw DimensionMismatch("ComplexMatrix: ragged initializer");
        std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
        ++r;
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

std::vector<double> ComplexMatrix::real_diagonal() const {
    std::vector<double> d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d[i] = (*this)(i, i).real();
    return d;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw DimensionMismatch("ComplexMatrix: operand dimensions differ");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    if (other.dim_ != dim_) throw DimensionMismatch("ComplexMatrix: operand dimensions differ");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) {
    for (auto& z : data_) z *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim_ != b.dim_) throw DimensionMismatch("ComplexMatrix: operand dimensions differ");
    const std::size_t n = a.dim_;
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = 0; j < na; ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx{}) continue;
            for (std::size_t k = 0; k < nb; ++k)
                for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
        }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("max_abs_diff: dimensions differ");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double unitarity_residual(const ComplexMatrix& u) {
    return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.dim()));
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
    const std::size_t n = m.dim();
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c)
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tol) return false;
    return true;
}

namespace {

double off_diagonal_sq(const ComplexMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.dim();
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return s;
}

// One Jacobi rotation zeroing a(p,q); accumulates the same rotation into v.
// With a_pq = |a_pq| e^{iφ}, G = D R where D = diag(.., e^{-iφ} at q, ..)
// makes the pivot real and R is the real symmetric Jacobi rotation.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
    const cplx apq = a(p, q);
    const double mag = std::abs(apq);
    const cplx phase = apq / mag;  // e^{iφ}
    const double app = a(p, p).real();
    const double aqq = a(q, q).real();

    const double theta = (aqq - app) / (2.0 * mag);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const cplx em = std::conj(phase);  // e^{-iφ}

    const std::size_t n = a.dim();
    // A <- A G
    for (std::size_t k = 0; k < n; ++k) {
        const cplx akp = a(k, p), akq = a(k, q);
        a(k, p) = c * akp - s * em * akq;
        a(k, q) = s * akp + c * em * akq;
    }
    // A <- G† A
    for (std::size_t k = 0; k < n; ++k) {
        const cplx apk = a(p, k), aqk = a(q, k);
        a(p, k) = c * apk - s * phase * aqk;
        a(q, k) = s * apk + c * phase * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();

    // V <- V G
    for (std::size_t k = 0; k < n; ++k) {
        const cplx vkp = v(k, p), vkq = v(k, q);
        v(k, p) = c * vkp - s * em * vkq;
        v(k, q) = s * vkp + c * em * vkq;
    }
}

} // namespace

HermitianEig eig_hermitian(const ComplexMatrix& m, const EigOptions& opts) {
    if (!is_hermitian(m, opts.hermitian_tol)) {
        throw NotHermitian("eig_hermitian: matrix is not Hermitian within " +
                           std::to_string(opts.hermitian_tol));
    }
    const std::size_t n = m.dim();
    // Symmetrize so the iteration sees an exactly Hermitian matrix.
    ComplexMatrix a = m;
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = a(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            const cplx avg = 0.5 * (a(r, c) + std::conj(a(c, r)));
            a(r, c) = avg;
            a(c, r) = std::conj(avg);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    double frob_sq = 0.0;
    for (const auto& z : a.data()) frob_sq += std::norm(z);
    const double stop_sq = frob_sq * 1e-30;

    bool converged = false;
    for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
        const double off = off_diagonal_sq(a);
        if (off == 0.0 || off <= stop_sq) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double mag = std::abs(a(p, q));
                if (mag == 0.0) continue;
                // Negligible next to both diagonal entries: drop it.
                if (sweep > 3 && std::abs(a(p, p).real()) + 100.0 * mag == std::abs(a(p, p).real()) &&
                    std::abs(a(q, q).real()) + 100.0 * mag == std::abs(a(q, q).real())) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                rotate(a, v, p, q);
            }
        }
    }
    if (!converged) {
        const double off = off_diagonal_sq(a);
        if (!(off == 0.0 || off <= stop_sq)) {
            throw NoConvergence("eig_hermitian: no convergence after " +
                                std::to_string(opts.max_sweeps) + " sweeps");
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    HermitianEig out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = a(order[j], order[j]).real();
        for (std::size_t k = 0; k < n; ++k) out.eigenvectors(k, j) = v(k, order[j]);
    }
    return out;
}

ComplexMatrix expm_hermitian_generator(const ComplexMatrix& a, double t, const EigOptions& opts) {
    const HermitianEig eig = eig_hermitian(a, opts);
    const std::size_t n = a.dim();
    const ComplexMatrix& q = eig.eigenvectors;
    std::vector<cplx> phases(n);
    for (std::size_t j = 0; j < n; ++j) phases[j] = std::polar(1.0, -t * eig.eigenvalues[j]);

    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            cplx s = 0.0;
            for (std::size_t j = 0; j < n; ++j) s += q(r, j) * phases[j] * std::conj(q(c, j));
            out(r, c) = s;
        }
    return out;
}

} // namespace ergokit
