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

#include "rabg/states.h"

#include <algorithm>
#include <cmath>

#include "rabg/errors.h"

namespace rabg {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kTraceTol = 1e-10;

void require_alpha(double alpha) {
    if (!(alpha >= 0 && alpha <= 1)) {
        throw Error(ErrorCode::OutOfRange, "alpha must lie in [0, 1], got " + std::to_string(alpha));
    }
}

// Sub-index formed from the bits of `full_index` at the given layout
// positions; positions[0] becomes the most significant bit.
std::size_t gather(std::size_t full_index, const RegisterLayout &layout, std::span<const std::size_t> positions) {
    std::size_t out = 0;
    for (std::size_t p : positions) {
        out = (out << 1) | ((full_index >> layout.bit_of(p)) & 1);
    }
    return out;
}

std::size_t scatter(std::size_t sub_index, const RegisterLayout &layout, std::span<const std::size_t> positions) {
    std::size_t out = 0;
    std::size_t n = positions.size();
    for (std::size_t k = 0; k < n; k++) {
        std::size_t bit = (sub_index >> (n - 1 - k)) & 1;
        out |= bit << layout.bit_of(positions[k]);
    }
    return out;
}

}  // namespace

char subsystem_name(Subsystem s) {
    switch (s) {
        case Subsystem::C:
            return 'C';
        case Subsystem::A:
            return 'A';
        case Subsystem::B:
            return 'B';
    }
    return '?';
}

RegisterLayout::RegisterLayout(std::initializer_list<Subsystem> labels)
    : RegisterLayout(std::vector<Subsystem>(labels)) {
}

RegisterLayout::RegisterLayout(std::vector<Subsystem> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw Error(ErrorCode::BadSubsystem, "layout needs at least one label");
    }
    for (std::size_t i = 0; i < labels_.size(); i++) {
        for (std::size_t j = i + 1; j < labels_.size(); j++) {
            if (labels_[i] == labels_[j]) {
                throw Error(ErrorCode::BadSubsystem, std::string("duplicate label ") + subsystem_name(labels_[i]));
            }
        }
    }
}

std::optional<std::size_t> RegisterLayout::position(Subsystem s) const {
    auto it = std::find(labels_.begin(), labels_.end(), s);
    if (it == labels_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

std::string RegisterLayout::to_string() const {
    std::string out;
    for (auto s : labels_) {
        out.push_back(subsystem_name(s));
    }
    return out;
}

PureState::PureState(RegisterLayout layout, std::vector<Complex> amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != layout_.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "amplitude count does not match layout " + layout_.to_string());
    }
    double norm2 = 0;
    for (const auto &z : amplitudes_) {
        norm2 += std::norm(z);
    }
    if (std::abs(std::sqrt(norm2) - 1) > kNormTol) {
        throw Error(ErrorCode::InvalidState, "state norm " + std::to_string(std::sqrt(norm2)) + " is not 1");
    }
}

bool StateCheck::ok() const {
    return hermiticity_defect <= HERMITICITY_TOL && trace_error <= kTraceTol && min_eigenvalue >= PSD_CLAMP;
}

StateCheck check_density(const ComplexMatrix &m) {
    StateCheck check{};
    check.hermiticity_defect = hermiticity_defect(m);
    check.trace_error = std::abs(trace(m) - Complex(1));
    check.min_eigenvalue = check.hermiticity_defect <= HERMITICITY_TOL ? hermitian_eigenvalues(m).min() : -1;
    return check;
}

DensityMatrix::DensityMatrix(RegisterLayout layout, ComplexMatrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
    if (matrix_.dim() != layout_.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix dimension does not match layout " + layout_.to_string());
    }
    StateCheck check = check_density(matrix_);
    if (!check.ok()) {
        throw Error(
            ErrorCode::InvalidState,
            "not a density matrix (hermiticity " + std::to_string(check.hermiticity_defect) + ", trace error " +
                std::to_string(check.trace_error) + ", min eigenvalue " + std::to_string(check.min_eigenvalue) + ")");
    }
}

DensityMatrix DensityMatrix::from_pure(const PureState &psi) {
    return DensityMatrix(psi.layout(), ComplexMatrix::projector(psi.amplitudes()));
}

PureState ghz_alpha(double alpha, Sign sign) {
    require_alpha(alpha);
    std::vector<Complex> amps(8);
    amps[0b000] = std::sqrt(alpha);
    amps[0b111] = (sign == Sign::Plus ? 1.0 : -1.0) * std::sqrt(1 - alpha);
    return PureState(RegisterLayout::cab(), std::move(amps));
}

PureState w_state() {
    std::vector<Complex> amps(8);
    double a = 1 / std::sqrt(3.0);
    amps[0b001] = a;
    amps[0b010] = a;
    amps[0b100] = a;
    return PureState(RegisterLayout::cab(), std::move(amps));
}

PureState bell_alpha(BellFamily family, Sign sign, double alpha) {
    require_alpha(alpha);
    std::vector<Complex> amps(4);
    double s = sign == Sign::Plus ? 1.0 : -1.0;
    if (family == BellFamily::Phi) {
        amps[0b00] = std::sqrt(alpha);
        amps[0b11] = s * std::sqrt(1 - alpha);
    } else {
        amps[0b01] = std::sqrt(alpha);
        amps[0b10] = s * std::sqrt(1 - alpha);
    }
    return PureState(RegisterLayout::ab(), std::move(amps));
}

PureState x_basis_state(Subsystem label, Sign sign) {
    double a = 1 / std::sqrt(2.0);
    return PureState(RegisterLayout{label}, {a, sign == Sign::Plus ? a : -a});
}

PureState basis_state(const RegisterLayout &layout, std::size_t index) {
    if (index >= layout.dim()) {
        throw Error(ErrorCode::OutOfRange, "basis index out of range for layout " + layout.to_string());
    }
    std::vector<Complex> amps(layout.dim());
    amps[index] = 1;
    return PureState(layout, std::move(amps));
}

PureState tensor(const PureState &a, const PureState &b) {
    std::vector<Subsystem> labels = a.layout().labels();
    labels.insert(labels.end(), b.layout().labels().begin(), b.layout().labels().end());
    RegisterLayout layout(std::move(labels));
    std::vector<Complex> amps;
    amps.reserve(layout.dim());
    for (const auto &x : a.amplitudes()) {
        for (const auto &y : b.amplitudes()) {
            amps.push_back(x * y);
        }
    }
    return PureState(std::move(layout), std::move(amps));
}

DensityMatrix mix(std::span<const double> weights, std::span<const DensityMatrix> states) {
    if (weights.size() != states.size() || states.empty()) {
        throw Error(ErrorCode::BadWeights, "mix needs one weight per state");
    }
    double total = 0;
    for (double w : weights) {
        total += w;
    }
    if (std::abs(total - 1) > 1e-12) {
        throw Error(ErrorCode::BadWeights, "mix: weights must sum to 1");
    }
    const RegisterLayout &layout = states.front().layout();
    ComplexMatrix acc(layout.dim());
    for (std::size_t k = 0; k < states.size(); k++) {
        if (!(states[k].layout() == layout)) {
            throw Error(ErrorCode::LayoutMismatch, "mix: states have different layouts");
        }
        if (weights[k] < 0) {
            throw Error(ErrorCode::BadWeights, "mix: negative weight");
        }
        acc = acc + weights[k] * states[k].matrix();
    }
    return DensityMatrix(layout, std::move(acc));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const Subsystem> keep) {
    const RegisterLayout &layout = rho.layout();
    if (keep.empty() || keep.size() >= layout.num_qubits()) {
        throw Error(ErrorCode::BadSubsystem, "partial_trace: keep must be a nonempty strict subset");
    }
    std::vector<std::size_t> kept;
    std::vector<std::size_t> traced;
    for (std::size_t p = 0; p < layout.num_qubits(); p++) {
        bool wanted = std::find(keep.begin(), keep.end(), layout.labels()[p]) != keep.end();
        (wanted ? kept : traced).push_back(p);
    }
    if (kept.size() != keep.size()) {
        throw Error(ErrorCode::BadSubsystem, "partial_trace: keep names labels absent from " + layout.to_string());
    }
    std::vector<Subsystem> kept_labels;
    for (std::size_t p : kept) {
        kept_labels.push_back(layout.labels()[p]);
    }
    RegisterLayout out_layout(std::move(kept_labels));

    std::size_t dk = out_layout.dim();
    std::size_t dt = std::size_t{1} << traced.size();
    ComplexMatrix out(dk);
    for (std::size_t r = 0; r < dk; r++) {
        std::size_t rf = scatter(r, layout, kept);
        for (std::size_t c = 0; c < dk; c++) {
            std::size_t cf = scatter(c, layout, kept);
            Complex acc = 0;
            for (std::size_t t = 0; t < dt; t++) {
                std::size_t tf = scatter(t, layout, traced);
                acc += rho.matrix()(rf | tf, cf | tf);
            }
            out(r, c) = acc;
        }
    }
    return DensityMatrix(std::move(out_layout), std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::initializer_list<Subsystem> keep) {
    return partial_trace(rho, std::span<const Subsystem>(keep.begin(), keep.size()));
}

ComplexMatrix partial_transpose(const DensityMatrix &rho, Subsystem on) {
    auto pos = rho.layout().position(on);
    if (!pos) {
        throw Error(
            ErrorCode::BadSubsystem,
            std::string("partial_transpose: no label ") + subsystem_name(on) + " in " + rho.layout().to_string());
    }
    std::vector<std::size_t> dims(rho.layout().num_qubits(), 2);
    return partial_transpose(rho.matrix(), dims, *pos);
}

double min_pt_eigenvalue(const DensityMatrix &rho, Subsystem on) {
    return hermitian_eigenvalues(partial_transpose(rho, on)).min();
}

bool is_ppt(const DensityMatrix &rho, Subsystem on) {
    return min_pt_eigenvalue(rho, on) >= PSD_CLAMP;
}

ComplexMatrix embed_operator(
    const ComplexMatrix &op, const RegisterLayout &op_layout, const RegisterLayout &full_layout) {
    if (op.dim() != op_layout.dim()) {
        throw Error(ErrorCode::DimensionMismatch, "embed_operator: operator does not match its layout");
    }
    std::vector<std::size_t> inside;
    for (auto s : op_layout.labels()) {
        auto pos = full_layout.position(s);
        if (!pos) {
            throw Error(
                ErrorCode::BadSubsystem,
                std::string("embed_operator: label ") + subsystem_name(s) + " missing from " + full_layout.to_string());
        }
        inside.push_back(*pos);
    }
    std::size_t inside_mask = 0;
    for (std::size_t p : inside) {
        inside_mask |= std::size_t{1} << full_layout.bit_of(p);
    }
    std::size_t n = full_layout.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; r++) {
        for (std::size_t c = 0; c < n; c++) {
            if ((r & ~inside_mask) != (c & ~inside_mask)) {
                continue;
            }
            out(r, c) = op(gather(r, full_layout, inside), gather(c, full_layout, inside));
        }
    }
    return out;
}

}  // namespace rabg
