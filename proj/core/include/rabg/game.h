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

#ifndef RABG_GAME_H
#define RABG_GAME_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rabg/closed_form.h"
#include "rabg/measurement.h"
#include "rabg/qswitch.h"
#include "rabg/states.h"

namespace rabg {

/// Largest allowed |bell_sim - bell_oracle| (and state distance) on a GHZ run.
inline constexpr double ORACLE_TOL = 1e-9;

enum class InitialKind { GHZ, W, CoherentControl };

/// GHZ(alpha) and CoherentControl(alpha) use alpha; W ignores it.
struct InitialState {
    InitialKind kind = InitialKind::GHZ;
    double alpha = 0.5;

    static InitialState ghz(double alpha) {
        return {InitialKind::GHZ, alpha};
    }
    static InitialState w() {
        return {InitialKind::W, 0.5};
    }
    static InitialState coherent_control(double alpha) {
        return {InitialKind::CoherentControl, alpha};
    }

    /// (C, A, B) start state: GHZ_alpha, W, or |+>_C (x) Phi+_alpha.
    DensityMatrix build() const;
};

struct Deterministic {};
struct Sampled {
    std::uint64_t seed;
};
/// Follow a prescribed outcome sequence, one entry per round.
struct Forced {
    std::vector<Outcome> path;
};
using GameMode = std::variant<Deterministic, Sampled, Forced>;

struct GameConfig {
    InitialState initial = InitialState::ghz(0.5);
    std::variant<std::vector<double>, GeometricScheduleSpec> schedule = std::vector<double>{};
    GameMode mode = Deterministic{};
    /// Violation threshold 2 + delta, within [2, 2 sqrt 2].
    double b_min = 2.01;

    /// Throws OutOfRange, BadThreshold, or BadRound (empty schedule or a
    /// forced path of the wrong length).
    void validate() const;
    std::vector<double> lambdas() const;
};

enum class RecordedOutcome { Plus, Minus, Both };

char recorded_outcome_symbol(RecordedOutcome o);

struct RoundRecord {
    std::size_t k;
    double lambda;
    DensityMatrix post_switch_state;
    RecordedOutcome outcome;
    /// Probability of the followed branch (the + branch in Deterministic mode).
    double outcome_probability;
    double p_plus;
    DensityMatrix post_measurement_ab;
    double bell_value;
    /// Absent for CoherentControl runs.
    std::optional<double> oracle_bell_value;
    double discrepancy;
    /// Max entrywise distance of the post-switch and post-measurement states
    /// from their closed forms; 0 when there is no oracle.
    double state_discrepancy;
};

struct GameTranscript {
    GameConfig config;
    std::vector<RoundRecord> rounds;
    std::vector<std::string> warnings;

    /// Number of leading rounds with bell_value >= b_min.
    std::size_t rounds_meeting_threshold() const;
};

/// Runs the protocol with the pin-map switch. Throws OracleMismatch when a
/// GHZ run strays from its closed form by more than ORACLE_TOL.
GameTranscript run_protocol(const GameConfig &cfg);

/// Same, with a caller-supplied switch.
GameTranscript run_protocol(const GameConfig &cfg, const SwitchChannel &sw);

/// Same as above but never throws OracleMismatch; discrepancies are only
/// recorded.
GameTranscript simulate_protocol(const GameConfig &cfg, const SwitchChannel &sw);

struct Lemma1Row {
    double alpha;
    Outcome outcome;
    double probability;
    double min_pt_eigenvalue;
    double max_chsh;
    /// Partial-transpose spectrum of the normalized branch state, descending.
    std::vector<double> pt_spectrum;
    /// {1, 0, alpha, 1 - alpha} / 2, descending.
    std::vector<double> expected_spectrum;
    double spectrum_error;
    bool passed;
};

/// Coherent control: |+>_C (x) Phi+_alpha through the switch, then a
/// projective X measurement of C. One row per alpha and nondegenerate
/// branch. Passing means PT min eigenvalue >= -1e-12, CHSH <= 2 + 1e-9 and
/// spectrum within 1e-10.
std::vector<Lemma1Row> lemma1_check(std::span<const double> alphas);

/// Smallest lambda in (0, 1] reaching b_min at the next round, found by
/// bisection to 1e-12 (the returned value always satisfies the threshold).
/// nullopt when even lambda = 1 falls short. Throws BadThreshold unless
/// b_min lies in (2, 2 sqrt 2].
std::optional<double> minimal_lambda(const Schedule &prefix, double b_min);

struct NmaxResult {
    double b_min;
    double alpha;
    std::size_t n_max;
    std::vector<double> chosen_lambdas;
    std::vector<double> per_round_bell;
    /// Bell value at round n_max + 1 with lambda = 1; below b_min.
    double probe_bell;
};

/// Greedy minimal-lambda extension until infeasible. Throws BadThreshold or
/// OutOfRange (alpha outside (0, 1)).
NmaxResult compute_nmax(double b_min, double alpha);

/// compute_nmax over a grid, b_min outer, in input order.
std::vector<NmaxResult> compute_nmax_grid(std::span<const double> b_mins, std::span<const double> alphas);

struct Observation1Row {
    std::size_t k;
    double bell_sim;
    /// bell_from_products with R = 0.
    double bell_formula;
    bool passed;
};

/// Rounds after the first interior projective round of the schedule. Both
/// values must stay at or below sqrt 2 + 1e-9. Throws BadRound when no
/// lambda_m = 1 with m < k exists.
std::vector<Observation1Row> observation1_check(double alpha, std::span<const double> lambdas);

struct VerifyCheck {
    std::string name;
    bool passed;
    /// Largest observed error or bound excess; passing means worst <= tol.
    double worst;
    double tol;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;

    bool all_passed() const;
};

/// Randomized oracle-vs-simulation sweep plus the fixed theorem checks.
/// Deterministic for a given (k_cap, trials, seed). Throws OutOfRange unless
/// 1 <= k_cap <= 10.
VerifyReport verify_theorems(std::size_t k_cap, std::size_t trials, std::uint64_t seed);

/// Same, simulating with the given switch instead of the pin-map switch.
VerifyReport verify_theorems(std::size_t k_cap, std::size_t trials, std::uint64_t seed, const SwitchChannel &sw);

}  // namespace rabg

#endif
