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

#ifndef RABG_STATES_H
#define RABG_STATES_H

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rabg/linalg.h"

namespace rabg {

/// The three parties of the game: the switch control, Alice, and Bob.
enum class Subsystem { C, A, B };

char subsystem_name(Subsystem s);

/// Ordered list of qubit labels. The first label is the most significant bit
/// of a computational basis index, so for (C, A, B) the ket |cab> has index
/// 4c + 2a + b and for (A, B) the ket |ab> has index 2a + b.
class RegisterLayout {
   public:
    RegisterLayout(std::initializer_list<Subsystem> labels);
    explicit RegisterLayout(std::vector<Subsystem> labels);

    static RegisterLayout cab() {
        return {Subsystem::C, Subsystem::A, Subsystem::B};
    }
    static RegisterLayout ab() {
        return {Subsystem::A, Subsystem::B};
    }

    const std::vector<Subsystem> &labels() const noexcept {
        return labels_;
    }
    std::size_t num_qubits() const noexcept {
        return labels_.size();
    }
    std::size_t dim() const noexcept {
        return std::size_t{1} << labels_.size();
    }
    /// Position of the label in the layout, 0 being most significant.
    std::optional<std::size_t> position(Subsystem s) const;
    bool contains(Subsystem s) const {
        return position(s).has_value();
    }
    /// Bit of a basis index that holds the given position.
    std::size_t bit_of(std::size_t position) const {
        return labels_.size() - 1 - position;
    }
    std::string to_string() const;

    bool operator==(const RegisterLayout &other) const = default;

   private:
    std::vector<Subsystem> labels_;
};

enum class Sign { Plus, Minus };

class PureState {
   public:
    /// Throws InvalidState unless the amplitudes have unit norm within 1e-12.
    PureState(RegisterLayout layout, std::vector<Complex> amplitudes);

    const RegisterLayout &layout() const noexcept {
        return layout_;
    }
    std::span<const Complex> amplitudes() const noexcept {
        return amplitudes_;
    }

   private:
    RegisterLayout layout_;
    std::vector<Complex> amplitudes_;
};

/// Outcome of checking the density-matrix axioms on a raw matrix.
struct StateCheck {
    double hermiticity_defect;
    double trace_error;
    double min_eigenvalue;

    bool ok() const;
};

StateCheck check_density(const ComplexMatrix &m);

/// Positive unit-trace matrix on a labeled register. Construction validates
/// Hermiticity (1e-10), trace (1e-10) and positivity (PSD_CLAMP).
class DensityMatrix {
   public:
    DensityMatrix(RegisterLayout layout, ComplexMatrix matrix);

    static DensityMatrix from_pure(const PureState &psi);

    const RegisterLayout &layout() const noexcept {
        return layout_;
    }
    const ComplexMatrix &matrix() const noexcept {
        return matrix_;
    }

   private:
    RegisterLayout layout_;
    ComplexMatrix matrix_;
};

/// sqrt(alpha)|000> +- sqrt(1 - alpha)|111> on (C, A, B).
PureState ghz_alpha(double alpha, Sign sign = Sign::Plus);

/// (|001> + |010> + |100>) / sqrt(3) on (C, A, B).
PureState w_state();

enum class BellFamily { Phi, Psi };

/// Phi: sqrt(alpha)|00> +- sqrt(1 - alpha)|11>;
/// Psi: sqrt(alpha)|01> +- sqrt(1 - alpha)|10>; both on (A, B).
PureState bell_alpha(BellFamily family, Sign sign, double alpha);

/// Single-qubit |+> or |-> on the given label.
PureState x_basis_state(Subsystem label, Sign sign);

/// Computational basis ket with the given index.
PureState basis_state(const RegisterLayout &layout, std::size_t index);

/// Tensor product; the result layout is a's labels followed by b's.
PureState tensor(const PureState &a, const PureState &b);

/// Convex combination of states sharing a layout.
DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states);

/// Reduced state on the kept labels, in the order they appear in rho's layout.
DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const Subsystem> keep);
DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<Subsystem> keep);

/// Transpose on the named qubit.
ComplexMatrix partial_transpose(const DensityMatrix &rho, Subsystem on);

/// Smallest eigenvalue of the partial transpose; two qubits are separable iff
/// this is >= PSD_CLAMP.
double min_pt_eigenvalue(const DensityMatrix &rho, Subsystem on = Subsystem::A);
bool is_ppt(const DensityMatrix &rho, Subsystem on = Subsystem::A);

/// Lifts an operator on `op_layout` to `full_layout`, acting as identity on
/// labels absent from `op_layout`. The operator's labels must appear in the
/// full layout (in any order).
ComplexMatrix embed_operator(
    const ComplexMatrix &op, const RegisterLayout &op_layout, const RegisterLayout &full_layout);

}  // namespace rabg

#endif
