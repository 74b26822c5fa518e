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

#ifndef RABG_MEASUREMENT_H
#define RABG_MEASUREMENT_H

#include <cstdint>
#include <optional>

#include "rabg/linalg.h"
#include "rabg/states.h"

namespace rabg {

enum class Outcome { Plus, Minus };

char outcome_symbol(Outcome o);

/// Branches below this probability are reported as degenerate and carry no
/// post-measurement state.
inline constexpr double DEGENERATE_PROBABILITY = 1e-14;

/// Two 2x2 operators indexed by outcome.
struct OutcomePair {
    ComplexMatrix plus;
    ComplexMatrix minus;

    const ComplexMatrix &operator[](Outcome o) const {
        return o == Outcome::Plus ? plus : minus;
    }
};

/// E_+- = (1 +- lambda)/2 |+-><+-| + (1 -+ lambda)/2 |-+><-+|.
OutcomePair povm_elements(double lambda);

/// Hermitian square roots of the POVM elements, used as the measurement
/// operators of the selective update.
OutcomePair sqrt_elements(double lambda);

struct MeasurementBranch {
    Outcome outcome;
    double probability;
    /// Empty when the branch is degenerate.
    std::optional<DensityMatrix> post_state;

    bool degenerate() const {
        return !post_state.has_value();
    }
};

struct BranchPair {
    MeasurementBranch plus;
    MeasurementBranch minus;

    const MeasurementBranch &operator[](Outcome o) const {
        return o == Outcome::Plus ? plus : minus;
    }
};

/// Unsharp measurement of the control qubit C with sharpness lambda.
/// Probabilities are Tr[rho (E_+- (x) I)]; post-states are
/// M rho M / p with M the square-root operators.
BranchPair measure_control(const DensityMatrix &rho, double lambda);

/// SplitMix64. Each draw adds 0x9E3779B97F4A7C15 to the state and returns
/// the standard mix of the result; next_unit() maps the top 53 bits onto
/// [0, 1). Output depends only on the seed and the number of draws.
class SplitMix64 {
   public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {
    }

    std::uint64_t next();
    double next_unit();
    std::uint64_t state() const noexcept {
        return state_;
    }

   private:
    std::uint64_t state_;
};

/// Picks the + branch iff the next uniform draw is below p_+.
const MeasurementBranch &sample_outcome(const BranchPair &branches, SplitMix64 &rng);

}  // namespace rabg

#endif
