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

#ifndef RABG_TESTS_TEST_UTIL_H
#define RABG_TESTS_TEST_UTIL_H

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "rabg/errors.h"
#include "rabg/linalg.h"
#include "rabg/states.h"

namespace rabg::testing {

// Eigen is used in tests only, as a reference implementation that shares no
// code with the library.
inline Eigen::MatrixXcd to_eigen(const ComplexMatrix &m) {
    Eigen::MatrixXcd out(m.dim(), m.dim());
    for (std::size_t r = 0; r < m.dim(); r++) {
        for (std::size_t c = 0; c < m.dim(); c++) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd &m) {
    ComplexMatrix out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

/// Reference spectrum, descending.
inline std::vector<double> eigen_spectrum(const ComplexMatrix &m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
    std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

inline Complex random_complex(std::mt19937_64 &rng) {
    std::normal_distribution<double> n(0, 1);
    return {n(rng), n(rng)};
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64 &rng, double scale = 1) {
    ComplexMatrix m(dim);
    for (std::size_t r = 0; r < dim; r++) {
        m(r, r) = scale * random_complex(rng).real();
        for (std::size_t c = r + 1; c < dim; c++) {
            Complex z = scale * random_complex(rng);
            m(r, c) = z;
            m(c, r) = std::conj(z);
        }
    }
    return m;
}

/// Haar-ish unitary from a QR decomposition of a Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64 &rng) {
    Eigen::MatrixXcd g(dim, dim);
    for (std::size_t r = 0; r < dim; r++) {
        for (std::size_t c = 0; c < dim; c++) {
            g(r, c) = random_complex(rng);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::MatrixXcd q = qr.householderQ();
    return from_eigen(q);
}

inline std::vector<Complex> random_ket(std::size_t dim, std::mt19937_64 &rng) {
    std::vector<Complex> v(dim);
    double norm = 0;
    for (auto &z : v) {
        z = random_complex(rng);
        norm += std::norm(z);
    }
    for (auto &z : v) {
        z /= std::sqrt(norm);
    }
    return v;
}

/// Random mixed state of the given rank, G G^dagger / Tr.
inline DensityMatrix random_density(const RegisterLayout &layout, std::mt19937_64 &rng, std::size_t rank = 0) {
    std::size_t dim = layout.dim();
    if (rank == 0) {
        rank = dim;
    }
    ComplexMatrix acc(dim);
    for (std::size_t k = 0; k < rank; k++) {
        std::vector<Complex> v(dim);
        for (auto &z : v) {
            z = random_complex(rng);
        }
        acc = acc + ComplexMatrix::projector(v);
    }
    return DensityMatrix(layout, (1.0 / trace(acc).real()) * acc);
}

/// Library error code thrown by f, or nullopt if it returned normally.
template <typename F>
std::optional<ErrorCode> error_code_of(F &&f) {
    try {
        f();
    } catch (const Error &e) {
        return e.code();
    }
    return std::nullopt;
}

}  // namespace rabg::testing

#define EXPECT_RABG_ERROR(expr, code_) \
    EXPECT_EQ(::rabg::testing::error_code_of([&] { (void)(expr); }), std::optional<::rabg::ErrorCode>(code_))

#endif
