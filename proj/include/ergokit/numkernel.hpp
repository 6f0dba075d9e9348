// numkernel.hpp: dense complex linear algebra for small Hermitian problems
//
// Row-major square complex matrices, a cyclic Jacobi eigensolver for
// Hermitian input, and exp(-i t A) built from the eigendecomposition.
// Everything here is a pure function of its inputs.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ergokit {

using cplx = std::complex<double>;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);  // zero matrix, dim >= 1
    ComplexMatrix(std::size_t dim, std::vector<cplx> row_major);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);

    std::size_t dim() const noexcept { return dim_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    std::span<const cplx> data() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double max_abs() const;  // ‖M‖_max
    std::vector<double> real_diagonal() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
    friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<cplx> data_;
};

// Kronecker product a ⊗ b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// ‖U†U − I‖_max
double unitarity_residual(const ComplexMatrix& u);

struct HermitianEig {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // column j pairs with eigenvalues[j]
};

struct EigOptions {
    double hermitian_tol = 1e-10;
    int max_sweeps = 100;
};

bool is_hermitian(const ComplexMatrix& m, double tol);

// Cyclic complex Jacobi. Throws NotHermitian / NoConvergence.
HermitianEig eig_hermitian(const ComplexMatrix& m, const EigOptions& opts = {});

// exp(-i t A) for Hermitian A.
ComplexMatrix expm_hermitian_generator(const ComplexMatrix& a, double t,
                                       const EigOptions& opts = {});

} // namespace ergokit
