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

#ifndef RABG_QSWITCH_H
#define RABG_QSWITCH_H

#include "rabg/channels.h"
#include "rabg/states.h"

namespace rabg {

/// Quantum SWITCH of two qubit channels, controlled by C and acting on B.
///
/// Kraus operators are S_ij = |0><0|_C (x) E_i F_j + |1><1|_C (x) F_j E_i,
/// ordered with i (the first channel's index) outer-major. For the pin maps
/// (E onto |0>, F onto |1>) this yields
///   S_11 = |1><1|_C (x) |1><0|_B
///   S_12 = 0
///   S_21 = |0><0|_C (x) |0><0|_B + |1><1|_C (x) |1><1|_B
///   S_22 = |0><0|_C (x) |0><1|_B
/// and leaves span{|000>, |111>} of (C, A, B) invariant.
struct SwitchChannel {
    /// Acts on (C, B).
    KrausChannel base;
    /// Acts on (C, A, B) as base (x) I_A.
    KrausChannel extended;
    KrausChannel first;
    KrausChannel second;
};

SwitchChannel build_switch(const KrausChannel &e, const KrausChannel &f);

/// build_switch(pin_map(0), pin_map(1)).
SwitchChannel pin_switch();

/// sum_i K_i rho K_i^dagger on a (C, A, B) state; throws LayoutMismatch for
/// any other layout.
DensityMatrix apply_switch(const SwitchChannel &sw, const DensityMatrix &rho);

/// True iff |psi><psi| is a fixed point of the switch within 1e-12.
bool dfs_check(const SwitchChannel &sw, const PureState &psi);

}  // namespace rabg

#endif
