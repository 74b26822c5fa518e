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

#include "rabg/measurement.h"

#include <algorithm>
#include <cmath>

#include "rabg/errors.h"

namespace rabg {

namespace {

void require_sharpness(double lambda) {
    if (!(lambda >= 0 && lambda <= 1)) {
        throw Error(ErrorCode::OutOfRange, "sharpness must lie in [0, 1], got " + std::to_string(lambda));
    }
}

ComplexMatrix x_projector(Sign sign) {
    double s = sign == Sign::Plus ? 0.5 : -0.5;
    return ComplexMatrix::from_rows({{0.5, s}, {s, 0.5}});
}

// a |+><+| + b |-><-|
ComplexMatrix in_x_basis(double a, double b) {
    return a * x_projector(Sign::Plus) + b * x_projector(Sign::Minus);
}

MeasurementBranch make_branch(Outcome outcome, const DensityMatrix &rho, const ComplexMatrix &effect,
                              const ComplexMatrix &op) {
    const RegisterLayout &layout = rho.layout();
    RegisterLayout control{Subsystem::C};
    ComplexMatrix e = embed_operator(effect, control, layout);
    ComplexMatrix m = embed_operator(op, control, layout);
    double p = trace(rho.matrix() * e).real();
    if (p < DEGENERATE_PROBABILITY) {
        return MeasurementBranch{outcome, std::max(p, 0.0), std::nullopt};
    }
    ComplexMatrix post = (1.0 / p) * (m * rho.matrix() * dagger(m));
    return MeasurementBranch{outcome, p, DensityMatrix(layout, std::move(post))};
}

}  // namespace

char outcome_symbol(Outcome o) {
    return o == Outcome::Plus ? '+' : '-';
}

OutcomePair povm_elements(double lambda) {
    require_sharpness(lambda);
    double hi = (1 + lambda) / 2;
    double lo = (1 - lambda) / 2;
    return OutcomePair{in_x_basis(hi, lo), in_x_basis(lo, hi)};
}

OutcomePair sqrt_elements(double lambda) {
    require_sharpness(lambda);
    double hi = std::sqrt((1 + lambda) / 2);
    double lo = std::sqrt((1 - lambda) / 2);
    return OutcomePair{in_x_basis(hi, lo), in_x_basis(lo, hi)};
}

BranchPair measure_control(const DensityMatrix &rho, double lambda) {
    require_sharpness(lambda);
    if (!rho.layout().contains(Subsystem::C)) {
        throw Error(ErrorCode::LayoutMismatch, "state has no control qubit: " + rho.layout().to_string());
    }
    OutcomePair effects = povm_elements(lambda);
    OutcomePair ops = sqrt_elements(lambda);
    return BranchPair{
        make_branch(Outcome::Plus, rho, effects.plus, ops.plus),
        make_branch(Outcome::Minus, rho, effects.minus, ops.minus),
    };
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double SplitMix64::next_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

const MeasurementBranch &sample_outcome(const BranchPair &branches, SplitMix64 &rng) {
    return rng.next_unit() < branches.plus.probability ? branches.plus : branches.minus;
}

}  // namespace rabg
