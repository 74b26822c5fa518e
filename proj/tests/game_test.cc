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

#include "rabg/game.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rabg/bell.h"
#include "test_util.h"

namespace rabg {
namespace {

const double kSqrt2 = std::sqrt(2.0);

GameConfig ghz_config(double alpha, std::vector<double> lambdas) {
    GameConfig cfg;
    cfg.initial = InitialState::ghz(alpha);
    cfg.schedule = std::move(lambdas);
    return cfg;
}

// Greedy search at alpha = 1/2 solved round by round in closed form, with no
// bisection: pick the branch of 2 sqrt(x + max(x, R^2)) = b_min that holds.
std::vector<double> greedy_trace_half(double b_min) {
    std::vector<double> out;
    double s = 1;
    double r = 1;
    while (true) {
        // Smallest lambda with 2 sqrt(x + max(x, r^2)) >= b_min, x = s^2 l^2.
        double target = b_min * b_min / 4;
        double l_dominant = std::sqrt(target / 2) / s;  // x >= r^2 branch
        double l_z = std::sqrt(std::max(0.0, target - r * r)) / s;  // x < r^2 branch
        double l = (s * s * l_z * l_z < r * r) ? l_z : l_dominant;
        if (l > 1) {
            return out;
        }
        out.push_back(l);
        double c = std::sqrt(1 - l * l);
        r *= c;
        s *= (1 + c) / 2;
    }
}

TEST(RunProtocol, ExampleBellValues) {
    GameTranscript t = run_protocol(ghz_config(0.5, {0.1, 1.0}));
    ASSERT_EQ(t.rounds.size(), 2u);
    EXPECT_NEAR(t.rounds[0].bell_value, 2.00998, 1e-5);
    EXPECT_NEAR(t.rounds[1].bell_value, 2.8213, 1e-4);
    EXPECT_EQ(t.rounds[0].outcome, RecordedOutcome::Both);
    EXPECT_NEAR(t.rounds[0].p_plus, 0.5, 1e-15);
    for (const RoundRecord &r : t.rounds) {
        ASSERT_TRUE(r.oracle_bell_value.has_value());
        EXPECT_LE(r.discrepancy, ORACLE_TOL);
        EXPECT_LE(r.state_discrepancy, 1e-10);
        EXPECT_TRUE(check_density(r.post_switch_state.matrix()).ok());
        EXPECT_TRUE(check_density(r.post_measurement_ab.matrix()).ok());
    }
    EXPECT_TRUE(t.warnings.empty());
    // 2.00998 misses the default 2.01 threshold, so no leading round counts.
    EXPECT_EQ(t.rounds_meeting_threshold(), 0u);
    GameConfig relaxed = ghz_config(0.5, {0.1, 1.0});
    relaxed.b_min = 2.0;
    EXPECT_EQ(run_protocol(relaxed).rounds_meeting_threshold(), 2u);
}

TEST(RunProtocol, ProjectiveFirstRoundKillsLaterRounds) {
    GameTranscript t = run_protocol(ghz_config(0.5, {1.0, 1.0}));
    EXPECT_NEAR(t.rounds[0].bell_value, 2 * kSqrt2, 1e-12);
    EXPECT_LT(t.rounds[1].bell_value, 2);
    EXPECT_NEAR(t.rounds[1].bell_value, kSqrt2, 1e-12);
    EXPECT_EQ(t.rounds_meeting_threshold(), 1u);
}

TEST(RunProtocol, GeometricSchedule) {
    GameConfig cfg;
    cfg.initial = InitialState::ghz(0.5);
    cfg.schedule = GeometricScheduleSpec{5, 10};
    GameTranscript t = run_protocol(cfg);
    ASSERT_EQ(t.rounds.size(), 5u);
    for (const RoundRecord &r : t.rounds) {
        EXPECT_GT(r.bell_value, 2);
    }
    EXPECT_NEAR(t.rounds.back().bell_value, 2.8213, 1e-4);
    EXPECT_EQ(t.rounds.back().lambda, 1.0);
}

TEST(RunProtocol, WStateNeverViolates) {
    GameConfig cfg;
    cfg.initial = InitialState::w();
    cfg.schedule = std::vector<double>{0.5, 0.5};
    GameTranscript t = run_protocol(cfg);
    for (const RoundRecord &r : t.rounds) {
        EXPECT_LE(r.bell_value, 2.0 / 3 + 1e-9);
        EXPECT_LE(r.state_discrepancy, 1e-10);
        EXPECT_TRUE(is_ppt(r.post_measurement_ab));
    }
}

TEST(RunProtocol, CoherentControlWarnsAfterFirstRound) {
    GameConfig cfg;
    cfg.initial = InitialState::coherent_control(0.5);
    cfg.schedule = std::vector<double>{1.0, 0.5};
    GameTranscript t = run_protocol(cfg);
    EXPECT_FALSE(t.warnings.empty());
    EXPECT_FALSE(t.rounds[0].oracle_bell_value.has_value());
    EXPECT_LE(t.rounds[0].bell_value, 2 + 1e-9);

    cfg.schedule = std::vector<double>{1.0};
    EXPECT_TRUE(run_protocol(cfg).warnings.empty());
}

TEST(RunProtocol, ConfigValidation) {
    EXPECT_RABG_ERROR(run_protocol(ghz_config(0.5, {})), ErrorCode::BadRound);
    EXPECT_RABG_ERROR(run_protocol(ghz_config(1.5, {0.5})), ErrorCode::OutOfRange);
    EXPECT_RABG_ERROR(run_protocol(ghz_config(0.5, {0.5, 1.2})), ErrorCode::OutOfRange);
    GameConfig cfg = ghz_config(0.5, {0.5});
    cfg.b_min = 1.9;
    EXPECT_RABG_ERROR(run_protocol(cfg), ErrorCode::BadThreshold);
    cfg.b_min = 2.9;
    EXPECT_RABG_ERROR(run_protocol(cfg), ErrorCode::BadThreshold);
    cfg.b_min = 2.0;
    EXPECT_NO_THROW(run_protocol(cfg));
    cfg.mode = Forced{{Outcome::Plus, Outcome::Minus}};
    EXPECT_RABG_ERROR(run_protocol(cfg), ErrorCode::BadRound);
}

// Every outcome path leads to the same post-switch states and Bell values;
// the AB state depends only on the current outcome.
TEST(RunProtocol, OutcomePathsCollapse) {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 10; trial++) {
        const std::size_t k = 5;
        std::vector<double> ls(k);
        for (double &l : ls) {
            l = u(rng);
        }
        GameConfig cfg = ghz_config(u(rng), ls);
        GameTranscript ref = run_protocol(cfg);
        for (unsigned mask = 0; mask < (1u << k); mask++) {
            std::vector<Outcome> path(k);
            for (std::size_t i = 0; i < k; i++) {
                path[i] = (mask >> i) & 1 ? Outcome::Minus : Outcome::Plus;
            }
            cfg.mode = Forced{path};
            GameTranscript t = run_protocol(cfg);
            for (std::size_t i = 0; i < k; i++) {
                EXPECT_LT(max_abs_distance(t.rounds[i].post_switch_state.matrix(),
                                           ref.rounds[i].post_switch_state.matrix()),
                          1e-10);
                EXPECT_NEAR(t.rounds[i].bell_value, ref.rounds[i].bell_value, 1e-10);
                if (path[i] == Outcome::Plus) {
                    EXPECT_LT(max_abs_distance(t.rounds[i].post_measurement_ab.matrix(),
                                               ref.rounds[i].post_measurement_ab.matrix()),
                              1e-10);
                }
            }
        }
    }
}

TEST(RunProtocol, SampledModeIsSeededAndMatchesDeterministic) {
    GameConfig cfg = ghz_config(0.3, {0.2, 0.5, 0.7, 0.9});
    GameTranscript det = run_protocol(cfg);
    cfg.mode = Sampled{12345};
    GameTranscript a = run_protocol(cfg);
    GameTranscript b = run_protocol(cfg);
    for (std::size_t i = 0; i < det.rounds.size(); i++) {
        EXPECT_EQ(a.rounds[i].outcome, b.rounds[i].outcome);
        EXPECT_EQ(a.rounds[i].bell_value, b.rounds[i].bell_value);
        EXPECT_NEAR(a.rounds[i].bell_value, det.rounds[i].bell_value, 1e-10);
        EXPECT_NE(a.rounds[i].outcome, RecordedOutcome::Both);
    }
    // Different seeds eventually pick different paths.
    bool differs = false;
    for (std::uint64_t seed = 0; seed < 20 && !differs; seed++) {
        cfg.mode = Sampled{seed};
        GameTranscript c = run_protocol(cfg);
        for (std::size_t i = 0; i < c.rounds.size(); i++) {
            differs |= c.rounds[i].outcome != a.rounds[i].outcome;
        }
    }
    EXPECT_TRUE(differs);
}

TEST(RunProtocol, CorruptedSwitchIsCaught) {
    SwitchChannel swapped = build_switch(pin_map(1), pin_map(0));
    GameConfig cfg = ghz_config(0.5, {0.1, 1.0});
    EXPECT_RABG_ERROR(run_protocol(cfg, swapped), ErrorCode::OracleMismatch);
    GameTranscript t = simulate_protocol(cfg, swapped);
    EXPECT_GT(t.rounds[0].discrepancy, ORACLE_TOL);
    EXPECT_NO_THROW(run_protocol(cfg, pin_switch()));
}

TEST(MinimalLambda, Examples) {
    std::optional<double> l1 = minimal_lambda(Schedule(0.5, {}), 2.2);
    ASSERT_TRUE(l1.has_value());
    // 1 + lambda^2 = 1.21
    EXPECT_NEAR(*l1, std::sqrt(0.21), 1e-11);
    EXPECT_NEAR(*l1, 0.45826, 1e-5);
    EXPECT_GE(bell_k(Schedule(0.5, {*l1}), 1), 2.2);

    std::optional<double> l2 = minimal_lambda(Schedule(0.5, {*l1}), 2.2);
    ASSERT_TRUE(l2.has_value());
    EXPECT_NEAR(*l2, 0.68622, 1e-5);

    // R = 0 after a projective round and S = 1/4 after two rounds: capped at
    // 2 sqrt(2 / 16) < 2.2.
    EXPECT_FALSE(minimal_lambda(Schedule(0.5, {1.0, 1.0}), 2.2).has_value());
}

TEST(MinimalLambda, ThresholdValidation) {
    EXPECT_RABG_ERROR(minimal_lambda(Schedule(0.5, {}), 2.0), ErrorCode::BadThreshold);
    EXPECT_RABG_ERROR(minimal_lambda(Schedule(0.5, {}), 2.9), ErrorCode::BadThreshold);
    std::optional<double> top = minimal_lambda(Schedule(0.5, {}), 2 * kSqrt2);
    ASSERT_TRUE(top.has_value());
    EXPECT_NEAR(*top, 1.0, 1e-12);
}

TEST(Nmax, SpotValues) {
    NmaxResult a = compute_nmax(2.8, 0.5);
    EXPECT_EQ(a.n_max, 1u);
    EXPECT_NEAR(a.chosen_lambdas[0], 0.9798, 1e-4);

    NmaxResult b = compute_nmax(2.2, 0.5);
    EXPECT_EQ(b.n_max, 3u);
    std::vector<double> hand = greedy_trace_half(2.2);
    ASSERT_EQ(hand.size(), 3u);
    for (std::size_t i = 0; i < 3; i++) {
        EXPECT_NEAR(b.chosen_lambdas[i], hand[i], 1e-10);
    }
    EXPECT_NEAR(b.chosen_lambdas[2], 0.9536, 1e-4);
}

TEST(Nmax, MatchesHandTraceAtHalf) {
    for (double b_min : {2.01, 2.05, 2.1, 2.3, 2.5, 2.7}) {
        EXPECT_EQ(compute_nmax(b_min, 0.5).n_max, greedy_trace_half(b_min).size()) << b_min;
    }
}

TEST(Nmax, ResultsAreCertified) {
    for (double b_min : {2.01, 2.1, 2.2, 2.5, 2.8}) {
        for (double alpha : {0.1, 0.3, 0.5, 0.7}) {
            NmaxResult r = compute_nmax(b_min, alpha);
            EXPECT_LT(r.probe_bell, b_min);
            if (r.n_max == 0) {
                continue;
            }
            GameTranscript t = run_protocol(ghz_config(alpha, r.chosen_lambdas));
            for (std::size_t i = 0; i < r.n_max; i++) {
                EXPECT_GE(r.per_round_bell[i], b_min - 1e-12);
                EXPECT_GE(t.rounds[i].bell_value, b_min - 1e-12);
            }
            std::vector<double> extended = r.chosen_lambdas;
            extended.push_back(1.0);
            EXPECT_LT(bell_k(Schedule(alpha, extended), r.n_max + 1), b_min);
        }
    }
}

TEST(Nmax, ShapeOfTheGrid) {
    std::vector<double> b_mins = {2.001, 2.01, 2.05, 2.1, 2.2, 2.4, 2.6, 2.8};
    std::vector<double> alphas = {0.1, 0.3, 0.5};
    std::vector<NmaxResult> grid = compute_nmax_grid(b_mins, alphas);
    ASSERT_EQ(grid.size(), b_mins.size() * alphas.size());
    auto at = [&](std::size_t bi, std::size_t ai) { return grid[bi * alphas.size() + ai].n_max; };
    for (std::size_t bi = 0; bi < b_mins.size(); bi++) {
        EXPECT_EQ(grid[bi * alphas.size()].b_min, b_mins[bi]);
        EXPECT_GE(at(bi, 2), at(bi, 1));
        EXPECT_GE(at(bi, 1), at(bi, 0));
        if (bi + 1 < b_mins.size()) {
            for (std::size_t ai = 0; ai < alphas.size(); ai++) {
                EXPECT_GE(at(bi, ai), at(bi + 1, ai));
            }
        }
    }
    // Symmetric in alpha <-> 1 - alpha.
    EXPECT_EQ(compute_nmax(2.05, 0.3).n_max, compute_nmax(2.05, 0.7).n_max);
}

TEST(Nmax, GrowsAsThresholdApproachesTwo) {
    std::size_t prev = 0;
    for (double delta : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}) {
        std::size_t n = compute_nmax(2 + delta, 0.5).n_max;
        EXPECT_GT(n, prev) << delta;
        prev = n;
    }
}

TEST(Nmax, Validation) {
    EXPECT_RABG_ERROR(compute_nmax(2.0, 0.5), ErrorCode::BadThreshold);
    EXPECT_RABG_ERROR(compute_nmax(3.0, 0.5), ErrorCode::BadThreshold);
    EXPECT_RABG_ERROR(compute_nmax(2.2, 0.0), ErrorCode::OutOfRange);
    EXPECT_RABG_ERROR(compute_nmax(2.2, 1.0), ErrorCode::OutOfRange);
}

TEST(ProjectiveRounds, LaterRoundsStayBelowSqrt2) {
    std::vector<Observation1Row> a = observation1_check(0.5, std::vector<double>{1, 1});
    ASSERT_EQ(a.size(), 1u);
    EXPECT_NEAR(a[0].bell_sim, kSqrt2, 1e-12);
    EXPECT_NEAR(a[0].bell_formula, kSqrt2, 1e-12);
    EXPECT_TRUE(a[0].passed);

    for (double x : {0.0, 0.3, 0.7, 1.0}) {
        for (const Observation1Row &r : observation1_check(0.5, std::vector<double>{1, x})) {
            EXPECT_LE(r.bell_sim, kSqrt2 + 1e-9);
            EXPECT_TRUE(r.passed);
        }
    }
    std::vector<Observation1Row> c = observation1_check(0.5, std::vector<double>{0.5, 1, 0.9});
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].k, 3u);
    EXPECT_LT(c[0].bell_sim, 2);
    EXPECT_NEAR(c[0].bell_sim, c[0].bell_formula, 1e-9);

    EXPECT_RABG_ERROR(observation1_check(0.5, std::vector<double>{0.5, 1}), ErrorCode::BadRound);
}

TEST(CoherentControl, SeparableForEveryAlpha) {
    std::vector<double> alphas;
    for (int i = 0; i <= 10; i++) {
        alphas.push_back(i / 10.0);
    }
    for (const Lemma1Row &r : lemma1_check(alphas)) {
        EXPECT_TRUE(r.passed) << r.alpha;
        EXPECT_GE(r.min_pt_eigenvalue, -1e-12);
        EXPECT_LE(r.max_chsh, 2 + 1e-9);
        EXPECT_LE(r.spectrum_error, 1e-10);
        EXPECT_NEAR(r.probability, 0.5, 1e-14);
    }
}

TEST(CoherentControl, SpotValues) {
    std::vector<double> a = {0.3};
    std::vector<Lemma1Row> rows = lemma1_check(a);
    ASSERT_EQ(rows.size(), 2u);
    std::vector<double> expected = {0.5, 0.35, 0.15, 0.0};
    for (std::size_t i = 0; i < 4; i++) {
        EXPECT_NEAR(rows[0].pt_spectrum[i], expected[i], 1e-10);
    }
    // alpha = 0: the branch state is |1><1| (x) I/2, a product with T = 0.
    std::vector<double> zero = {0.0};
    for (const Lemma1Row &r : lemma1_check(zero)) {
        EXPECT_NEAR(r.max_chsh, 0.0, 1e-12);
    }
}

TEST(Verify, PassesAndIsDeterministic) {
    VerifyReport a = verify_theorems(5, 50, 42);
    VerifyReport b = verify_theorems(5, 50, 42);
    EXPECT_TRUE(a.all_passed());
    ASSERT_EQ(a.checks.size(), b.checks.size());
    for (std::size_t i = 0; i < a.checks.size(); i++) {
        EXPECT_EQ(a.checks[i].name, b.checks[i].name);
        EXPECT_EQ(a.checks[i].worst, b.checks[i].worst);
        EXPECT_TRUE(a.checks[i].passed) << a.checks[i].name << " worst " << a.checks[i].worst;
    }
    EXPECT_RABG_ERROR(verify_theorems(11, 1, 0), ErrorCode::OutOfRange);
    EXPECT_RABG_ERROR(verify_theorems(0, 1, 0), ErrorCode::OutOfRange);
}

TEST(Verify, CorruptedSwitchFails) {
    VerifyReport r = verify_theorems(4, 20, 42, build_switch(pin_map(1), pin_map(0)));
    EXPECT_FALSE(r.all_passed());
    bool bell_failed = false;
    for (const VerifyCheck &c : r.checks) {
        if (c.name == "bell_oracle") {
            bell_failed = !c.passed;
        }
    }
    EXPECT_TRUE(bell_failed);
}

}  // namespace
}  // namespace rabg
