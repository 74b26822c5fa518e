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

#ifndef RABG_CHANNELS_H
#define RABG_CHANNELS_H

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "rabg/linalg.h"
#include "rabg/states.h"

namespace rabg {

inline constexpr double CPTP_TOL = 1e-10;

/// A channel in operator-sum form. Kraus operators are kept exactly as given,
/// including identically zero ones; evaluation skips those.
class KrausChannel {
   public:
    /// Throws DimensionMismatch on inconsistent operator sizes and
    /// NotTracePreserving when sum K^dagger K differs from I by more than
    /// CPTP_TOL.
    KrausChannel(std::size_t in_dim, std::size_t out_dim, std::vector<ComplexMatrix> kraus_ops, std::string name = {});

    std::size_t in_dim() const noexcept {
        return in_dim_;
    }
    std::size_t out_dim() const noexcept {
        return out_dim_;
    }
    const std::vector<ComplexMatrix> &kraus_ops() const noexcept {
        return ops_;
    }
    const std::string &name() const noexcept {
        return name_;
    }

    /// ||sum K^dagger K - I||_max.
    double completeness_defect() const;

   private:
    std::size_t in_dim_;
    std::size_t out_dim_;
    std::vector<ComplexMatrix> ops_;
    std::string name_;
};

/// Constant channel onto |target><target| with Kraus ops |t><0|, |t><1|.
KrausChannel pin_map(int target);

KrausChannel identity_channel(std::size_t dim = 2);

/// sum_i K_i X K_i^dagger for an arbitrary operator X.
ComplexMatrix channel_action(const KrausChannel &ch, const ComplexMatrix &x);

/// Applies a channel to the whole register.
DensityMatrix apply(const KrausChannel &ch, const DensityMatrix &rho);
/// Applies a qubit channel to one labeled qubit, identity elsewhere.
DensityMatrix apply(const KrausChannel &ch, const DensityMatrix &rho, Subsystem on);

/// outer after inner; Kraus set {O_i I_j} with i outer-major.
KrausChannel compose(const KrausChannel &outer, const KrausChannel &inner);

/// Probabilistic mixture with Kraus set {sqrt(w_j) K_i^(j)}. Weights must be
/// nonnegative and sum to 1 within 1e-12.
KrausChannel mixture(std::span<const double> weights, std::span<const KrausChannel> channels);

/// Unnormalized Choi matrix sum_ij |i><j| (x) ch(|i><j|); trace equals in_dim.
struct ChoiMatrix {
    ComplexMatrix matrix;
    std::size_t in_dim;
    std::size_t out_dim;
};

ChoiMatrix choi(const KrausChannel &ch);

enum class PptFlag { PPT, NPT };

/// PPT iff the partial transpose of the Choi matrix has min eigenvalue
/// >= PSD_CLAMP. For qubit channels PPT is equivalent to entanglement
/// breaking; for larger channels only NPT => not entanglement breaking holds.
PptFlag choi_ppt_flag(const ChoiMatrix &c);
double choi_min_pt_eigenvalue(const ChoiMatrix &c);

}  // namespace rabg

#endif
