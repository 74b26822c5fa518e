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

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "rabg/bell.h"
#include "rabg/errors.h"

namespace rabg {

namespace {

constexpr double kBranchGapTol = 1e-10;
constexpr double kBisectionTol = 1e-12;
constexpr std::size_t kNmaxRoundCap = 1000000;

const double kTsirelson = 2 * std::sqrt(2.0);

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void require_alpha(double alpha) {
    if (!(alpha >= 0 && alpha <= 1)) {
        throw Error(ErrorCode::OutOfRange, "alpha must lie in [0, 1], got " + fmt_double(alpha));
    }
}

void require_open_threshold(double b_min) {
    if (!(b_min > 2 && b_min <= kTsirelson)) {
        throw Error(ErrorCode::BadThreshold, "threshold must lie in (2, 2 sqrt 2], got " + fmt_double(b_min));
    }
}

std::optional<double> minimal_lambda_from(double alpha, double r, double s, double b_min) {
    auto bell = [&](double l) { return bell_from_products(alpha, r, s, l); };
    if (bell(1.0) < b_min) {
        return std::nullopt;
    }
    double lo = 0;
    double hi = 1;
    while (hi - lo > kBisectionTol) {
        double mid = lo + (hi - lo) / 2;
        if (bell(mid) >= b_min) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

const MeasurementBranch &pick_branch(const BranchPair &branches, const GameMode &mode, std::size_t k,
                                     SplitMix64 &rng) {
    if (const auto *forced = std::get_if<Forced>(&mode)) {
        const MeasurementBranch &b = branches[forced->path[k - 1]];
        if (b.degenerate()) {
            throw Error(ErrorCode::InvalidState, "forced outcome in round " + std::to_string(k) + " has probability " +
                                                     fmt_double(b.probability));
        }
        return b;
    }
    const MeasurementBranch *b = &branches.plus;
    if (std::holds_alternative<Sampled>(mode)) {
        b = &sample_outcome(branches, rng);
    }
    if (b->degenerate()) {
        b = b->outcome == Outcome::Plus ? &branches.minus : &branches.plus;
    }
    return *b;
}

RecordedOutcome to_recorded(Outcome o) {
    return o == Outcome::Plus ? RecordedOutcome::Plus : RecordedOutcome::Minus;
}

GameTranscript protocol_impl(const GameConfig &cfg, const SwitchChannel &sw, bool enforce) {
    cfg.validate();
    const std::vector<double> lambdas = cfg.lambdas();
    const InitialKind kind = cfg.initial.kind;

    GameTranscript transcript{cfg, {}, {}};
    if (kind == InitialKind::CoherentControl && lambdas.size() > 1) {
        transcript.warnings.push_back("coherent-control start is only analysed for round 1; later rounds carry no "
                                      "oracle");
    }

    std::optional<Schedule> sched;
    if (kind == InitialKind::GHZ) {
        sched.emplace(cfg.initial.alpha, lambdas);
    }
    std::uint64_t seed = 0;
    if (const auto *s = std::get_if<Sampled>(&cfg.mode)) {
        seed = s->seed;
    }
    SplitMix64 rng(seed);
    const bool deterministic = std::holds_alternative<Deterministic>(cfg.mode);

    DensityMatrix rho = cfg.initial.build();
    for (std::size_t k = 1; k <= lambdas.size(); k++) {
        const double lambda = lambdas[k - 1];
        DensityMatrix post_switch = apply_switch(sw, rho);
        BranchPair branches = measure_control(post_switch, lambda);
        const MeasurementBranch &chosen = pick_branch(branches, cfg.mode, k, rng);

        DensityMatrix ab = partial_trace(*chosen.post_state, {Subsystem::A, Subsystem::B});
        double bell = max_chsh(ab).bell_value;

        RecordedOutcome recorded = to_recorded(chosen.outcome);
        if (deterministic && !branches.plus.degenerate() && !branches.minus.degenerate()) {
            recorded = RecordedOutcome::Both;
            DensityMatrix other_ab = partial_trace(*branches.minus.post_state, {Subsystem::A, Subsystem::B});
            double gap = std::abs(max_chsh(other_ab).bell_value - bell);
            if (gap > kBranchGapTol) {
                std::string msg = "round " + std::to_string(k) + ": branch Bell values differ by " + fmt_double(gap);
                if (enforce && kind == InitialKind::GHZ) {
                    throw Error(ErrorCode::OracleMismatch, msg);
                }
                transcript.warnings.push_back(msg);
            }
        }

        std::optional<double> oracle;
        double state_gap = 0;
        if (kind == InitialKind::GHZ) {
            oracle = bell_k(*sched, k);
            state_gap = std::max(max_abs_distance(post_switch.matrix(), rho_cab_k(*sched, k).matrix()),
                                 max_abs_distance(ab.matrix(), rho_ab_k_post(*sched, k, chosen.outcome).matrix()));
        } else if (kind == InitialKind::W) {
            oracle = wstate_bell_k(lambdas, k);
            state_gap = std::max(max_abs_distance(post_switch.matrix(), wstate_rho_cab_k(lambdas, k).matrix()),
                                 max_abs_distance(ab.matrix(), wstate_rho_ab_k(lambdas, k).matrix()));
        }
        double discrepancy = oracle ? std::abs(bell - *oracle) : 0.0;
        if (enforce && kind == InitialKind::GHZ && (discrepancy > ORACLE_TOL || state_gap > ORACLE_TOL)) {
            throw Error(ErrorCode::OracleMismatch, "round " + std::to_string(k) + ": Bell discrepancy " +
                                                       fmt_double(discrepancy) + ", state discrepancy " +
                                                       fmt_double(state_gap));
        }

        transcript.rounds.push_back(RoundRecord{
            k,
            lambda,
            post_switch,
            recorded,
            chosen.probability,
            branches.plus.probability,
            ab,
            bell,
            oracle,
            discrepancy,
            state_gap,
        });
        rho = *chosen.post_state;
    }
    return transcript;
}

std::vector<Lemma1Row> lemma1_impl(std::span<const double> alphas, const SwitchChannel &sw) {
    std::vector<Lemma1Row> rows;
    for (double alpha : alphas) {
        require_alpha(alpha);
        DensityMatrix post = apply_switch(sw, InitialState::coherent_control(alpha).build());
        BranchPair branches = measure_control(post, 1.0);
        std::vector<double> expected = {0.5, 0.0, alpha / 2, (1 - alpha) / 2};
        std::sort(expected.begin(), expected.end(), std::greater<>());
        for (Outcome o : {Outcome::Plus, Outcome::Minus}) {
            const MeasurementBranch &b = branches[o];
            if (b.degenerate()) {
                continue;
            }
            DensityMatrix ab = partial_trace(*b.post_state, {Subsystem::A, Subsystem::B});
            std::vector<double> spectrum = hermitian_eigenvalues(partial_transpose(ab, Subsystem::A)).eigenvalues;
            double err = 0;
            for (std::size_t i = 0; i < spectrum.size(); i++) {
                err = std::max(err, std::abs(spectrum[i] - expected[i]));
            }
            double chsh = max_chsh(ab).bell_value;
            double min_eig = spectrum.back();
            bool passed = min_eig >= PSD_CLAMP && chsh <= 2 + 1e-9 && err <= 1e-10;
            rows.push_back(Lemma1Row{alpha, o, b.probability, min_eig, chsh, spectrum, expected, err, passed});
        }
    }
    return rows;
}

// Running maximum of a nonnegative error.
struct Worst {
    double value = 0;

    void add(double v) {
        if (std::isnan(v)) {
            value = v;
        } else if (!std::isnan(value)) {
            value = std::max(value, v);
        }
    }
};

std::vector<double> unit_grid(double start, double step, int count) {
    std::vector<double> out;
    for (int i = 0; i < count; i++) {
        out.push_back(start + step * i);
    }
    return out;
}

double state_defect(const DensityMatrix &rho) {
    StateCheck c = check_density(rho.matrix());
    return std::max({c.hermiticity_defect, c.trace_error, std::max(0.0, -c.min_eigenvalue)});
}

}  // namespace

DensityMatrix InitialState::build() const {
    switch (kind) {
        case InitialKind::GHZ:
            return DensityMatrix::from_pure(ghz_alpha(alpha, Sign::Plus));
        case InitialKind::W:
            return DensityMatrix::from_pure(w_state());
        case InitialKind::CoherentControl:
            return DensityMatrix::from_pure(
                tensor(x_basis_state(Subsystem::C, Sign::Plus), bell_alpha(BellFamily::Phi, Sign::Plus, alpha)));
    }
    throw Error(ErrorCode::InvalidState, "unknown initial state");
}

void GameConfig::validate() const {
    require_alpha(initial.alpha);
    if (!(b_min >= 2 && b_min <= kTsirelson)) {
        throw Error(ErrorCode::BadThreshold, "b_min must lie in [2, 2 sqrt 2], got " + fmt_double(b_min));
    }
    std::vector<double> ls = lambdas();
    if (ls.empty()) {
        throw Error(ErrorCode::BadRound, "schedule has no rounds");
    }
    for (double l : ls) {
        if (!(l >= 0 && l <= 1)) {
            throw Error(ErrorCode::OutOfRange, "lambda must lie in [0, 1], got " + fmt_double(l));
        }
    }
    if (const auto *forced = std::get_if<Forced>(&mode)) {
        if (forced->path.size() != ls.size()) {
            throw Error(ErrorCode::BadRound, "forced path has " + std::to_string(forced->path.size()) +
                                                 " outcomes for " + std::to_string(ls.size()) + " rounds");
        }
    }
}

std::vector<double> GameConfig::lambdas() const {
    if (const auto *g = std::get_if<GeometricScheduleSpec>(&schedule)) {
        return g->lambdas();
    }
    return std::get<std::vector<double>>(schedule);
}

char recorded_outcome_symbol(RecordedOutcome o) {
    switch (o) {
        case RecordedOutcome::Plus:
            return '+';
        case RecordedOutcome::Minus:
            return '-';
        case RecordedOutcome::Both:
            return '*';
    }
    return '?';
}

std::size_t GameTranscript::rounds_meeting_threshold() const {
    std::size_t n = 0;
    while (n < rounds.size() && rounds[n].bell_value >= config.b_min) {
        n++;
    }
    return n;
}

GameTranscript run_protocol(const GameConfig &cfg) {
    return protocol_impl(cfg, pin_switch(), true);
}

GameTranscript run_protocol(const GameConfig &cfg, const SwitchChannel &sw) {
    return protocol_impl(cfg, sw, true);
}

GameTranscript simulate_protocol(const GameConfig &cfg, const SwitchChannel &sw) {
    return protocol_impl(cfg, sw, false);
}

std::vector<Lemma1Row> lemma1_check(std::span<const double> alphas) {
    return lemma1_impl(alphas, pin_switch());
}

std::optional<double> minimal_lambda(const Schedule &prefix, double b_min) {
    require_open_threshold(b_min);
    ClosedFormContext ctx(prefix.lambdas());
    return minimal_lambda_from(prefix.alpha(), ctx.r(ctx.rounds()), ctx.s(ctx.rounds()), b_min);
}

NmaxResult compute_nmax(double b_min, double alpha) {
    require_open_threshold(b_min);
    if (!(alpha > 0 && alpha < 1)) {
        throw Error(ErrorCode::OutOfRange, "alpha must lie in (0, 1), got " + fmt_double(alpha));
    }
    NmaxResult result{b_min, alpha, 0, {}, {}, 0};
    double r = 1;
    double s = 1;
    while (true) {
        std::optional<double> lambda = minimal_lambda_from(alpha, r, s, b_min);
        if (!lambda) {
            result.probe_bell = bell_from_products(alpha, r, s, 1.0);
            break;
        }
        if (result.n_max == kNmaxRoundCap) {
            throw Error(ErrorCode::NoConvergence, "greedy schedule exceeded " + std::to_string(kNmaxRoundCap) + " rounds");
        }
        result.chosen_lambdas.push_back(*lambda);
        result.per_round_bell.push_back(bell_from_products(alpha, r, s, *lambda));
        result.n_max++;
        double c = std::sqrt(1 - *lambda * *lambda);
        r *= c;
        s *= (1 + c) / 2;
    }
    return result;
}

std::vector<NmaxResult> compute_nmax_grid(std::span<const double> b_mins, std::span<const double> alphas) {
    std::vector<NmaxResult> out;
    out.reserve(b_mins.size() * alphas.size());
    for (double b : b_mins) {
        for (double a : alphas) {
            out.push_back(compute_nmax(b, a));
        }
    }
    return out;
}

std::vector<Observation1Row> observation1_check(double alpha, std::span<const double> lambdas) {
    std::size_t m = 0;
    for (std::size_t i = 0; i + 1 < lambdas.size(); i++) {
        if (lambdas[i] == 1.0) {
            m = i + 1;
            break;
        }
    }
    if (m == 0) {
        throw Error(ErrorCode::BadRound, "schedule has no projective round before its last");
    }
    GameConfig cfg;
    cfg.initial = InitialState::ghz(alpha);
    cfg.schedule = std::vector<double>(lambdas.begin(), lambdas.end());
    GameTranscript t = run_protocol(cfg);
    ClosedFormContext ctx(lambdas);

    std::vector<Observation1Row> rows;
    const double bound = std::sqrt(2.0) + 1e-9;
    for (std::size_t k = m + 1; k <= lambdas.size(); k++) {
        double sim = t.rounds[k - 1].bell_value;
        double formula = bell_from_products(alpha, 0.0, ctx.s(k - 1), lambdas[k - 1]);
        rows.push_back(Observation1Row{k, sim, formula, sim <= bound && formula <= bound});
    }
    return rows;
}

bool VerifyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const VerifyCheck &c) { return c.passed; });
}

VerifyReport verify_theorems(std::size_t k_cap, std::size_t trials, std::uint64_t seed) {
    return verify_theorems(k_cap, trials, seed, pin_switch());
}

VerifyReport verify_theorems(std::size_t k_cap, std::size_t trials, std::uint64_t seed, const SwitchChannel &sw) {
    if (k_cap < 1 || k_cap > 10) {
        throw Error(ErrorCode::OutOfRange, "k_cap must lie in [1, 10], got " + std::to_string(k_cap));
    }
    VerifyReport report;
    auto add = [&](std::string name, const Worst &w, double tol) {
        report.checks.push_back(VerifyCheck{std::move(name), w.value <= tol, w.value, tol});
    };
    const std::vector<double> alpha_grid = unit_grid(0.1, 0.1, 9);

    Worst cptp;
    cptp.add(sw.base.completeness_defect());
    cptp.add(sw.extended.completeness_defect());
    cptp.add(sw.first.completeness_defect());
    cptp.add(sw.second.completeness_defect());
    add("switch_cptp", cptp, CPTP_TOL);

    Worst bell_gap, state_gap, path_gap, validity;
    SplitMix64 rng(seed);
    for (std::size_t t = 0; t < trials; t++) {
        double alpha = rng.next_unit();
        std::size_t k = 1 + std::min<std::size_t>(k_cap - 1, static_cast<std::size_t>(rng.next_unit() * k_cap));
        std::vector<double> lambdas(k);
        for (double &l : lambdas) {
            l = rng.next_unit();
        }
        GameConfig cfg;
        cfg.initial = InitialState::ghz(alpha);
        cfg.schedule = lambdas;
        GameTranscript det = simulate_protocol(cfg, sw);
        cfg.mode = Sampled{rng.next()};
        GameTranscript sam = simulate_protocol(cfg, sw);
        for (std::size_t i = 0; i < k; i++) {
            const RoundRecord &a = det.rounds[i];
            const RoundRecord &b = sam.rounds[i];
            bell_gap.add(a.discrepancy);
            bell_gap.add(b.discrepancy);
            state_gap.add(a.state_discrepancy);
            state_gap.add(b.state_discrepancy);
            // Earlier outcomes must not matter; the current one only swaps the
            // Phi+ / Phi- weights of the AB state.
            path_gap.add(max_abs_distance(a.post_switch_state.matrix(), b.post_switch_state.matrix()));
            path_gap.add(std::abs(a.bell_value - b.bell_value));
            if (b.outcome == RecordedOutcome::Plus) {
                path_gap.add(max_abs_distance(a.post_measurement_ab.matrix(), b.post_measurement_ab.matrix()));
            }
            validity.add(state_defect(a.post_switch_state));
            validity.add(state_defect(a.post_measurement_ab));
            validity.add(state_defect(b.post_switch_state));
            validity.add(state_defect(b.post_measurement_ab));
        }
    }
    add("bell_oracle", bell_gap, ORACLE_TOL);
    add("state_oracle", state_gap, 1e-10);
    add("outcome_independence", path_gap, 1e-10);
    add("state_validity", validity, 1e-10);

    Worst round1;
    for (double alpha : alpha_grid) {
        for (double lambda : unit_grid(0.0, 0.1, 11)) {
            GameConfig cfg;
            cfg.initial = InitialState::ghz(alpha);
            cfg.schedule = std::vector<double>{lambda};
            double sim = simulate_protocol(cfg, sw).rounds[0].bell_value;
            round1.add(std::abs(sim - 2 * std::sqrt(1 + 4 * alpha * (1 - alpha) * lambda * lambda)));
        }
    }
    add("round1_law", round1, 1e-9);

    Worst guarantee;
    for (double alpha : alpha_grid) {
        GameConfig cfg;
        cfg.initial = InitialState::ghz(alpha);
        cfg.schedule = GeometricScheduleSpec{k_cap, guaranteed_ratio(alpha)};
        for (const RoundRecord &r : simulate_protocol(cfg, sw).rounds) {
            guarantee.add(std::max(0.0, 2 + 1e-12 - r.bell_value));
        }
    }
    add("geometric_guarantee", guarantee, 0.0);

    Worst projective;
    for (double alpha : alpha_grid) {
        for (const std::vector<double> &ls : {std::vector<double>{1, 1}, std::vector<double>{0.5, 1, 0.9}}) {
            GameConfig cfg;
            cfg.initial = InitialState::ghz(alpha);
            cfg.schedule = ls;
            GameTranscript t = simulate_protocol(cfg, sw);
            std::size_t m = ls[0] == 1 ? 1 : 2;
            for (std::size_t k = m + 1; k <= ls.size(); k++) {
                projective.add(std::max(0.0, t.rounds[k - 1].bell_value - std::sqrt(2.0)));
            }
        }
    }
    add("projective_round_bound", projective, 1e-9);

    Worst w_state_gap, w_bound, w_ppt;
    {
        GameConfig cfg;
        cfg.initial = InitialState::w();
        cfg.schedule = std::vector<double>(k_cap, 0.5);
        for (const RoundRecord &r : simulate_protocol(cfg, sw).rounds) {
            w_state_gap.add(r.state_discrepancy);
            w_bound.add(std::max(0.0, r.bell_value - 2.0 / 3));
            w_ppt.add(std::max(0.0, PSD_CLAMP - min_pt_eigenvalue(r.post_measurement_ab)));
        }
    }
    add("wstate_closed_form", w_state_gap, 1e-10);
    add("wstate_bound", w_bound, 1e-9);
    add("wstate_ppt", w_ppt, 0.0);

    Worst l1_spectrum, l1_ppt, l1_chsh;
    for (const Lemma1Row &row : lemma1_impl(alpha_grid, sw)) {
        l1_spectrum.add(row.spectrum_error);
        l1_ppt.add(std::max(0.0, PSD_CLAMP - row.min_pt_eigenvalue));
        l1_chsh.add(std::max(0.0, row.max_chsh - 2));
    }
    add("coherent_control_spectrum", l1_spectrum, 1e-10);
    add("coherent_control_ppt", l1_ppt, 0.0);
    add("coherent_control_chsh", l1_chsh, 1e-9);

    Worst nmax_cert;
    for (double b_min : {2.8, 2.5, 2.2, 2.1, 2.05}) {
        for (double alpha : {0.1, 0.3, 0.5}) {
            NmaxResult res = compute_nmax(b_min, alpha);
            nmax_cert.add(res.probe_bell >= b_min ? res.probe_bell - b_min + 1 : 0.0);
            if (res.n_max == 0) {
                continue;
            }
            GameConfig cfg;
            cfg.initial = InitialState::ghz(alpha);
            cfg.schedule = res.chosen_lambdas;
            for (const RoundRecord &r : simulate_protocol(cfg, sw).rounds) {
                nmax_cert.add(std::max(0.0, b_min - 1e-12 - r.bell_value));
            }
        }
    }
    add("nmax_certificate", nmax_cert, 0.0);

    return report;
}

}  // namespace rabg
