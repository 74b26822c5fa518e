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

#ifndef RABG_BELL_H
#define RABG_BELL_H

#include <array>

#include "rabg/states.h"

namespace rabg {

using Vec3 = std::array<double, 3>;

/// T_ij = Tr[rho (sigma_i (x) sigma_j)] with (x, y, z) = (0, 1, 2).
struct CorrelationMatrix {
    std::array<Vec3, 3> t{};

    double operator()(std::size_t i, std::size_t j) const {
        return t[i][j];
    }
    static CorrelationMatrix diagonal(double x, double y, double z);
};

double max_abs_distance(const CorrelationMatrix &a, const CorrelationMatrix &b);

/// Horodecki maximal CHSH value of a two-qubit state.
struct BellResult {
    /// u_1 + u_2, the two largest eigenvalues of T^T T.
    double m_value;
    /// 2 sqrt(m_value).
    double bell_value;
    /// Eigenvalues of T^T T, descending.
    Vec3 u;
};

/// Requires layout (A, B); throws LayoutMismatch otherwise.
CorrelationMatrix correlation_matrix(const DensityMatrix &rho);

BellResult max_chsh(const CorrelationMatrix &t);
BellResult max_chsh(const DensityMatrix &rho);

/// Measurement directions for A0 = a.sigma, A1 = a'.sigma, B0 = b.sigma,
/// B1 = b'.sigma.
struct ChshSettings {
    Vec3 a;
    Vec3 a_prime;
    Vec3 b;
    Vec3 b_prime;
};

/// E(a,b) + E(a',b) + E(a,b') - E(a',b') with E(x,y) = x^T T y. Throws
/// NotUnitVector when any direction deviates from unit length by more than
/// 1e-10.
double chsh_value(const DensityMatrix &rho, const ChshSettings &settings);
double chsh_value(const CorrelationMatrix &t, const ChshSettings &settings);

}  // namespace rabg

#endif
