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

#include "rabg/linalg.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#include "rabg/errors.h"

namespace rabg {

namespace {

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b, const char *op) {
    if (a.dim() != b.dim()) {
        throw Error(
            ErrorCode::DimensionMismatch,
            std::string(op) + ": " + std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
}

double offdiag_norm(const ComplexMatrix &m) {
    double acc = 0;
    for (std::size_t r = 0; r < m.dim(); r++) {
        for (std::size_t c = 0; c < m.dim(); c++) {
            if (r != c) {
                acc += std::norm(m(r, c));
            }
        }
    }
    return std::sqrt(acc);
}

double frobenius_norm(const ComplexMatrix &m) {
    double acc = 0;
    for (const auto &z : m.entries()) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

// One complex Jacobi rotation zeroing a(p, q). With a(p, q) = r e^{i phi} the
// unitary is U = D G, where D = diag(1, e^{-i phi}) makes the pivot real and G
// is the classic real rotation [[c, s], [-s, c]] on the (p, q) plane.
void rotate(ComplexMatrix &a, std::size_t p, std::size_t q) {
    Complex apq = a(p, q);
    double r = std::abs(apq);
    if (r == 0) {
        return;
    }
    Complex phase = apq / r;  // e^{i phi}
    double app = a(p, p).real();
    double aqq = a(q, q).real();
    double theta = (aqq - app) / (2 * r);
    double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
    double c = 1 / std::sqrt(t * t + 1);
    double s = t * c;

    Complex u_pp = c;
    Complex u_pq = s;
    Complex u_qp = -s * std::conj(phase);
    Complex u_qq = c * std::conj(phase);

    std::size_t n = a.dim();
    // A <- A U (columns p, q).
    for (std::size_t k = 0; k < n; k++) {
        Complex akp = a(k, p);
        Complex akq = a(k, q);
        a(k, p) = akp * u_pp + akq * u_qp;
        a(k, q) = akp * u_pq + akq * u_qq;
    }
    // A <- U^dagger A (rows p, q).
    for (std::size_t k = 0; k < n; k++) {
        Complex apk = a(p, k);
        Complex aqk = a(q, k);
        a(p, k) = std::conj(u_pp) * apk + std::conj(u_qp) * aqk;
        a(q, k) = std::conj(u_pq) * apk + std::conj(u_qq) * aqk;
    }
    a(p, q) = 0;
    a(q, p) = 0;
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) {
        throw Error(ErrorCode::DimensionMismatch, "matrix dimension must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim == 0 || entries_.size() != dim * dim) {
        throw Error(
            ErrorCode::DimensionMismatch,
            "expected " + std::to_string(dim * dim) + " entries, got " + std::to_string(entries_.size()));
    }
    for (const auto &z : entries_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorCode::NotFinite, "matrix entry is NaN or Inf");
        }
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t k = 0; k < dim; k++) {
        m(k, k) = 1;
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size());
    for (std::size_t k = 0; k < values.size(); k++) {
        m(k, k) = values[k];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    std::size_t n = rows.size();
    std::vector<Complex> entries;
    entries.reserve(n * n);
    for (const auto &row : rows) {
        if (row.size() != n) {
            throw Error(ErrorCode::DimensionMismatch, "from_rows: matrix must be square");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return ComplexMatrix(n, std::move(entries));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    if (ket.size() != bra.size()) {
        throw Error(ErrorCode::DimensionMismatch, "outer: ket and bra lengths differ");
    }
    ComplexMatrix m(ket.size());
    for (std::size_t r = 0; r < ket.size(); r++) {
        for (std::size_t c = 0; c < bra.size(); c++) {
            m(r, c) = ket[r] * std::conj(bra[c]);
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> ket) {
    return outer(ket, ket);
}

bool ComplexMatrix::is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Complex &z) {
        return z == Complex(0);
    });
}

double HermitianSpectrum::sum() const {
    return std::accumulate(eigenvalues.begin(), eigenvalues.end(), 0.0);
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    std::size_t na = a.dim();
    std::size_t nb = b.dim();
    ComplexMatrix out(na * nb);
    for (std::size_t i1 = 0; i1 < na; i1++) {
        for (std::size_t j1 = 0; j1 < na; j1++) {
            Complex x = a(i1, j1);
            for (std::size_t i2 = 0; i2 < nb; i2++) {
                for (std::size_t j2 = 0; j2 < nb; j2++) {
                    out(i1 * nb + i2, j1 * nb + j2) = x * b(i2, j2);
                }
            }
        }
    }
    return out;
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "matmul");
    std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t k = 0; k < n; k++) {
            Complex x = a(r, k);
            if (x == Complex(0)) {
                continue;
            }
            for (std::size_t c = 0; c < n; c++) {
                out(r, c) += x * b(k, c);
            }
        }
    }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix &m) {
    ComplexMatrix out(m.dim());
    for (std::size_t r = 0; r < m.dim(); r++) {
        for (std::size_t c = 0; c < m.dim(); c++) {
            out(c, r) = std::conj(m(r, c));
        }
    }
    return out;
}

ComplexMatrix transpose(const ComplexMatrix &m) {
    ComplexMatrix out(m.dim());
    for (std::size_t r = 0; r < m.dim(); r++) {
        for (std::size_t c = 0; c < m.dim(); c++) {
            out(c, r) = m(r, c);
        }
    }
    return out;
}

ComplexMatrix add(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "add");
    ComplexMatrix out = a;
    for (std::size_t r = 0; r < a.dim(); r++) {
        for (std::size_t c = 0; c < a.dim(); c++) {
            out(r, c) += b(r, c);
        }
    }
    return out;
}

ComplexMatrix subtract(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "subtract");
    ComplexMatrix out = a;
    for (std::size_t r = 0; r < a.dim(); r++) {
        for (std::size_t c = 0; c < a.dim(); c++) {
            out(r, c) -= b(r, c);
        }
    }
    return out;
}

ComplexMatrix scale(const ComplexMatrix &m, Complex factor) {
    ComplexMatrix out = m;
    for (std::size_t r = 0; r < m.dim(); r++) {
        for (std::size_t c = 0; c < m.dim(); c++) {
            out(r, c) *= factor;
        }
    }
    return out;
}

Complex trace(const ComplexMatrix &m) {
    Complex acc = 0;
    for (std::size_t k = 0; k < m.dim(); k++) {
        acc += m(k, k);
    }
    return acc;
}

std::vector<Complex> matvec(const ComplexMatrix &m, std::span<const Complex> v) {
    if (v.size() != m.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "matvec: vector length differs from matrix dimension");
    }
    std::vector<Complex> out(m.dim());
    for (std::size_t r = 0; r < m.dim(); r++) {
        for (std::size_t c = 0; c < m.dim(); c++) {
            out[r] += m(r, c) * v[c];
        }
    }
    return out;
}

double max_abs_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "max_abs_distance");
    double worst = 0;
    for (std::size_t r = 0; r < a.dim(); r++) {
        for (std::size_t c = 0; c < a.dim(); c++) {
            worst = std::max(worst, std::abs(a(r, c) - b(r, c)));
        }
    }
    return worst;
}

double hermiticity_defect(const ComplexMatrix &m) {
    double worst = 0;
    for (std::size_t r = 0; r < m.dim(); r++) {
        for (std::size_t c = r; c < m.dim(); c++) {
            worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
        }
    }
    return worst;
}

HermitianSpectrum hermitian_eigenvalues(const ComplexMatrix &m) {
    double defect = hermiticity_defect(m);
    if (defect > HERMITICITY_TOL) {
        throw Error(ErrorCode::NotHermitian, "hermiticity defect " + std::to_string(defect));
    }
    std::size_t n = m.dim();
    // Symmetrize so rounding noise in the input cannot bias the result.
    ComplexMatrix a(n);
    for (std::size_t r = 0; r < n; r++) {
        a(r, r) = m(r, r).real();
        for (std::size_t c = r + 1; c < n; c++) {
            Complex v = 0.5 * (m(r, c) + std::conj(m(c, r)));
            a(r, c) = v;
            a(c, r) = std::conj(v);
        }
    }

    double target = EIG_OFFDIAG_TOL * std::max(1.0, frobenius_norm(a));
    int sweeps = 0;
    while (offdiag_norm(a) >= target) {
        if (sweeps == JACOBI_MAX_SWEEPS) {
            throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap reached");
        }
        for (std::size_t p = 0; p + 1 < n; p++) {
            for (std::size_t q = p + 1; q < n; q++) {
                rotate(a, p, q);
            }
        }
        sweeps++;
    }

    HermitianSpectrum spectrum;
    spectrum.eigenvalues.reserve(n);
    for (std::size_t k = 0; k < n; k++) {
        spectrum.eigenvalues.push_back(a(k, k).real());
    }
    std::sort(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(), std::greater<>());
    return spectrum;
}

ComplexMatrix partial_transpose(const ComplexMatrix &m, std::span<const std::size_t> dims, std::size_t factor) {
    if (factor >= dims.size()) {
        throw Error(ErrorCode::BadSubsystem, "partial_transpose: factor index out of range");
    }
    std::size_t total = std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    if (total != m.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "partial_transpose: factor dimensions do not match matrix");
    }
    // Stride of the chosen factor within a flat index.
    std::size_t stride = 1;
    for (std::size_t k = factor + 1; k < dims.size(); k++) {
        stride *= dims[k];
    }
    std::size_t d = dims[factor];
    ComplexMatrix out(m.dim());
    for (std::size_t r = 0; r < m.dim(); r++) {
        std::size_t rf = (r / stride) % d;
        for (std::size_t c = 0; c < m.dim(); c++) {
            std::size_t cf = (c / stride) % d;
            // Swap the chosen factor's row and column digits.
            std::size_t r2 = r + (cf - rf) * stride;
            std::size_t c2 = c + (rf - cf) * stride;
            out(r2, c2) = m(r, c);
        }
    }
    return out;
}

ComplexMatrix pauli_x() {
    return ComplexMatrix::from_rows({{0, 1}, {1, 0}});
}

ComplexMatrix pauli_y() {
    return ComplexMatrix::from_rows({{0, Complex(0, -1)}, {Complex(0, 1), 0}});
}

ComplexMatrix pauli_z() {
    return ComplexMatrix::from_rows({{1, 0}, {0, -1}});
}

}  // namespace rabg
