// Copyright 2026 The RABG Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#ifndef RABG_LINALG_H
#define RABG_LINALG_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rabg {

using Complex = std::complex<double>;

inline constexpr double HERMITICITY_TOL = 1e-10;
inline constexpr double EIG_OFFDIAG_TOL = 1e-14;
/// Eigenvalues above this count as nonnegative.
inline constexpr double PSD_CLAMP = -1e-12;
inline constexpr int JACOBI_MAX_SWEEPS = 100;

/// Dense square complex matrix stored row-major. Sized for the handful of
/// qubits this library works with (dimension <= 8), so no attempt is made at
/// blocking or sparsity.
class ComplexMatrix {
   public:
    /// Zero matrix of the given dimension.
    explicit ComplexMatrix(std::size_t dim);
    /// Takes ownership of row-major entries; throws if the length is not
    /// dim*dim or any entry is NaN/Inf.
    ComplexMatrix(std::size_t dim, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows);
    /// |ket><bra|
    static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);
    static ComplexMatrix projector(std::span<const Complex> ket);

    std::size_t dim() const noexcept {
        return dim_;
    }
    Complex &operator()(std::size_t row, std::size_t col) {
        return entries_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    std::span<const Complex> entries() const noexcept {
        return entries_;
    }

    bool is_zero() const;
    bool operator==(const ComplexMatrix &other) const = default;

   private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

struct HermitianSpectrum {
    /// Sorted descending.
    std::vector<double> eigenvalues;

    double min() const {
        return eigenvalues.back();
    }
    double max() const {
        return eigenvalues.front();
    }
    double sum() const;
};

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix dagger(const ComplexMatrix &m);
ComplexMatrix transpose(const ComplexMatrix &m);
ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix subtract(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix scale(const ComplexMatrix &m, Complex factor);
Complex trace(const ComplexMatrix &m);
std::vector<Complex> matvec(const ComplexMatrix &m, std::span<const Complex> v);

inline ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    return matmul(a, b);
}
inline ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) {
    return add(a, b);
}
inline ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) {
    return subtract(a, b);
}
inline ComplexMatrix operator*(Complex factor, const ComplexMatrix &m) {
    return scale(m, factor);
}
inline ComplexMatrix operator*(const ComplexMatrix &m, Complex factor) {
    return scale(m, factor);
}

/// Largest entrywise modulus of a - b.
double max_abs_distance(const ComplexMatrix &a, const ComplexMatrix &b);
/// Largest entrywise modulus of m - m^dagger.
double hermiticity_defect(const ComplexMatrix &m);

/// Real spectrum of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Throws NotHermitian when ||m - m^dagger||_max exceeds HERMITICITY_TOL and
/// NoConvergence when JACOBI_MAX_SWEEPS sweeps do not bring the off-diagonal
/// Frobenius norm below EIG_OFFDIAG_TOL (scaled by the matrix norm when that
/// exceeds one).
HermitianSpectrum hermitian_eigenvalues(const ComplexMatrix &m);

/// Transposes tensor factor `factor` of an operator on a space with the given
/// factor dimensions (most significant factor first).
ComplexMatrix partial_transpose(const ComplexMatrix &m, std::span<const std::size_t> dims, std::size_t factor);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace rabg

#endif
