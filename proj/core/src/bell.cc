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

#include "rabg/bell.h"

#include <algorithm>
#include <cmath>

#include "rabg/errors.h"
#include "rabg/linalg.h"

namespace rabg {

namespace {

constexpr double kUnitTol = 1e-10;

void require_unit(const Vec3 &v, const char *which) {
    double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (std::abs(n - 1) > kUnitTol) {
        throw Error(ErrorCode::NotUnitVector, std::string(which) + " has norm " + std::to_string(n));
    }
}

double correlator(const CorrelationMatrix &t, const Vec3 &x, const Vec3 &y) {
    double acc = 0;
    for (std::size_t i = 0; i < 3; i++) {
        for (std::size_t j = 0; j < 3; j++) {
            acc += x[i] * t(i, j) * y[j];
        }
    }
    return acc;
}

}  // namespace

CorrelationMatrix CorrelationMatrix::diagonal(double x, double y, double z) {
    CorrelationMatrix m;
    m.t[0][0] = x;
    m.t[1][1] = y;
    m.t[2][2] = z;
    return m;
}

double max_abs_distance(const CorrelationMatrix &a, const CorrelationMatrix &b) {
    double worst = 0;
    for (std::size_t i = 0; i < 3; i++) {
        for (std::size_t j = 0; j < 3; j++) {
            worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
        }
    }
    return worst;
}

CorrelationMatrix correlation_matrix(const DensityMatrix &rho) {
    if (!(rho.layout() == RegisterLayout::ab())) {
        throw Error(ErrorCode::LayoutMismatch, "correlation matrix needs an (A, B) state, got " + rho.layout().to_string());
    }
    const std::array<ComplexMatrix, 3> paulis = {pauli_x(), pauli_y(), pauli_z()};
    CorrelationMatrix out;
    for (std::size_t i = 0; i < 3; i++) {
        for (std::size_t j = 0; j < 3; j++) {
            out.t[i][j] = trace(rho.matrix() * kron(paulis[i], paulis[j])).real();
        }
    }
    return out;
}

BellResult max_chsh(const CorrelationMatrix &t) {
    ComplexMatrix u(3);
    for (std::size_t i = 0; i < 3; i++) {
        for (std::size_t j = 0; j < 3; j++) {
            double acc = 0;
            for (std::size_t k = 0; k < 3; k++) {
                acc += t(k, i) * t(k, j);
            }
            u(i, j) = acc;
        }
    }
    HermitianSpectrum spectrum = hermitian_eigenvalues(u);
    BellResult result{};
    std::copy(spectrum.eigenvalues.begin(), spectrum.eigenvalues.end(), result.u.begin());
    result.m_value = std::max(0.0, result.u[0] + result.u[1]);
    result.bell_value = 2 * std::sqrt(result.m_value);
    return result;
}

BellResult max_chsh(const DensityMatrix &rho) {
    return max_chsh(correlation_matrix(rho));
}

double chsh_value(const CorrelationMatrix &t, const ChshSettings &s) {
    require_unit(s.a, "a");
    require_unit(s.a_prime, "a'");
    require_unit(s.b, "b");
    require_unit(s.b_prime, "b'");
    return correlator(t, s.a, s.b) + correlator(t, s.a_prime, s.b) + correlator(t, s.a, s.b_prime) -
           correlator(t, s.a_prime, s.b_prime);
}

double chsh_value(const DensityMatrix &rho, const ChshSettings &settings) {
    return chsh_value(correlation_matrix(rho), settings);
}

}  // namespace rabg
