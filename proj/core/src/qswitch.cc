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

#include "rabg/qswitch.h"

#include "rabg/errors.h"

namespace rabg {

namespace {

constexpr double kFixedPointTol = 1e-12;

}  // namespace

SwitchChannel build_switch(const KrausChannel &e, const KrausChannel &f) {
    if (e.in_dim() != 2 || f.in_dim() != 2) {
        throw Error(ErrorCode::DimensionMismatch, "switch needs two qubit channels");
    }
    ComplexMatrix control0 = ComplexMatrix::diagonal({1, 0});
    ComplexMatrix control1 = ComplexMatrix::diagonal({0, 1});
    RegisterLayout cb{Subsystem::C, Subsystem::B};
    RegisterLayout cab = RegisterLayout::cab();

    std::vector<ComplexMatrix> base_ops;
    std::vector<ComplexMatrix> extended_ops;
    for (const auto &ei : e.kraus_ops()) {
        for (const auto &fj : f.kraus_ops()) {
            ComplexMatrix s = kron(control0, ei * fj) + kron(control1, fj * ei);
            extended_ops.push_back(embed_operator(s, cb, cab));
            base_ops.push_back(std::move(s));
        }
    }
    std::string name = "SWITCH(" + e.name() + "," + f.name() + ")";
    return SwitchChannel{
        KrausChannel(4, 4, std::move(base_ops), name),
        KrausChannel(8, 8, std::move(extended_ops), name),
        e,
        f,
    };
}

SwitchChannel pin_switch() {
    return build_switch(pin_map(0), pin_map(1));
}

DensityMatrix apply_switch(const SwitchChannel &sw, const DensityMatrix &rho) {
    if (!(rho.layout() == RegisterLayout::cab())) {
        throw Error(ErrorCode::LayoutMismatch, "switch expects a (C, A, B) state, got " + rho.layout().to_string());
    }
    return apply(sw.extended, rho);
}

bool dfs_check(const SwitchChannel &sw, const PureState &psi) {
    DensityMatrix rho = DensityMatrix::from_pure(psi);
    DensityMatrix out = apply_switch(sw, rho);
    return max_abs_distance(out.matrix(), rho.matrix()) <= kFixedPointTol;
}

}  // namespace rabg
