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

#include "cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rabg/bell.h"
#include "rabg/closed_form.h"
#include "rabg/errors.h"
#include "rabg/game.h"
#include "rabg/states.h"

namespace rabg::cli {

namespace {

constexpr int kDefaultPrecision = 12;

std::string_view trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return {};
    }
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_real(std::string_view text) {
    text = trim(text);
    double v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw std::invalid_argument("not a finite number: '" + std::string(text) + "'");
    }
    return v;
}

// Grid points computed as start + i * step pick up representation noise
// (0.1 + 2 * 0.1 = 0.30000000000000004); snap them to 12 digits.
double snap(double v) {
    return std::strtod(format_number(v, kDefaultPrecision).c_str(), nullptr);
}

std::string csv_field(std::string s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell &c, int precision) {
    if (const auto *d = std::get_if<double>(&c)) {
        return format_number(*d, precision);
    }
    if (const auto *i = std::get_if<std::int64_t>(&c)) {
        return std::to_string(*i);
    }
    if (const auto *s = std::get_if<std::string>(&c)) {
        return *s;
    }
    return {};
}

std::string join_reals(const std::vector<double> &xs, int precision) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); i++) {
        if (i > 0) {
            out += ';';
        }
        out += format_number(xs[i], precision);
    }
    return out;
}

Cell optional_cell(const std::optional<double> &v) {
    return v ? Cell{*v} : Cell{Null{}};
}

std::string outcome_text(RecordedOutcome o) {
    switch (o) {
        case RecordedOutcome::Plus:
            return "+";
        case RecordedOutcome::Minus:
            return "-";
        case RecordedOutcome::Both:
            return "both";
    }
    return "?";
}

std::string ppt_text(double min_pt) {
    return min_pt >= PSD_CLAMP ? "PPT" : "NPT";
}

// Replaces `--config FILE` with the file's key=value lines as `--key=value`
// tokens placed right after the subcommand name, ahead of the explicit flags.
// Every option takes its last value, so explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
    std::string path;
    bool found = false;
    for (std::size_t i = 0; i < args.size(); i++) {
        if (args[i] == "--config") {
            if (i + 1 >= args.size()) {
                throw CLI::ArgumentMismatch("--config needs a file argument");
            }
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            found = true;
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            found = true;
            break;
        }
    }
    if (!found) {
        return args;
    }
    std::ifstream in(path);
    if (!in) {
        throw CLI::FileError("cannot read config file " + path);
    }
    std::vector<std::string> injected;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        std::string_view t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        std::size_t eq = t.find('=');
        std::string_view key = eq == std::string_view::npos ? std::string_view{} : trim(t.substr(0, eq));
        while (!key.empty() && key.front() == '-') {
            key.remove_prefix(1);
        }
        if (key.empty()) {
            throw CLI::ConversionError(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        injected.push_back("--" + std::string(key) + "=" + std::string(trim(t.substr(eq + 1))));
    }
    std::size_t sub = 0;
    while (sub < args.size() && !args[sub].empty() && args[sub].front() == '-') {
        sub++;
    }
    std::size_t at = sub < args.size() ? sub + 1 : args.size();
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(at), injected.begin(), injected.end());
    return args;
}

struct OutputOptions {
    std::string out_path;
    std::string format = "csv";
    int precision = kDefaultPrecision;
    std::string config_unused;
};

void add_output_options(CLI::App *sub, OutputOptions &o) {
    sub->add_option("--out", o.out_path, "Write to this file instead of stdout");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--precision", o.precision, "Significant digits")->check(CLI::Range(1, 17));
    sub->add_option("--config", o.config_unused, "key=value file; explicit flags win");
}

void emit(const Table &table, const OutputOptions &o, std::ostream &out) {
    std::string text = o.format == "json" ? to_json(table, o.precision) : to_csv(table, o.precision);
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out_path, std::ios::binary | std::ios::trunc);
    if (!f) {
        throw std::runtime_error("cannot write " + o.out_path);
    }
    f << text;
}

struct RunArgs {
    double alpha = 0.5;
    std::string lambdas;
    std::string geometric;
    std::string mode = "deterministic";
    std::uint64_t seed = 0;
    double b_min = 2.01;
};

GeometricScheduleSpec parse_geometric(const std::string &text) {
    std::size_t comma = text.find(',');
    if (comma == std::string::npos) {
        throw std::invalid_argument("--geometric expects k,q");
    }
    double k = parse_real(std::string_view(text).substr(0, comma));
    double q = parse_real(std::string_view(text).substr(comma + 1));
    if (k < 1 || k != std::floor(k) || k > 1000) {
        throw std::invalid_argument("--geometric: k must be an integer in [1, 1000]");
    }
    if (!(q > 1)) {
        throw std::invalid_argument("--geometric: q must exceed 1");
    }
    return GeometricScheduleSpec{static_cast<std::size_t>(k), q};
}

Table cmd_run(const RunArgs &a, std::ostream &err) {
    if (a.lambdas.empty() == a.geometric.empty()) {
        throw std::invalid_argument("run needs exactly one of --lambdas or --geometric");
    }
    GameConfig cfg;
    cfg.initial = InitialState::ghz(a.alpha);
    if (a.lambdas.empty()) {
        cfg.schedule = parse_geometric(a.geometric);
    } else {
        cfg.schedule = parse_real_list(a.lambdas);
    }
    if (a.mode == "sampled") {
        cfg.mode = Sampled{a.seed};
    }
    cfg.b_min = a.b_min;
    GameTranscript t = run_protocol(cfg);
    for (const std::string &w : t.warnings) {
        err << "warning: " << w << "\n";
    }
    Table table{{"k", "lambda_k", "p_plus", "bell_sim", "bell_oracle", "discrepancy", "outcome"}, {}};
    for (const RoundRecord &r : t.rounds) {
        table.rows.push_back({static_cast<std::int64_t>(r.k), r.lambda, r.p_plus, r.bell_value,
                              optional_cell(r.oracle_bell_value), r.discrepancy, outcome_text(r.outcome)});
    }
    return table;
}

Table cmd_nmax(const std::string &grid, const std::string &alphas) {
    if (grid.find(':') == std::string::npos) {
        throw std::invalid_argument("--bmin-grid expects start:stop:step");
    }
    std::vector<double> b_mins = parse_real_list(grid);
    std::vector<double> as = parse_real_list(alphas);
    Table table{{"b_min", "alpha", "n_max", "lambdas"}, {}};
    for (const NmaxResult &r : compute_nmax_grid(b_mins, as)) {
        table.rows.push_back(
            {r.b_min, r.alpha, static_cast<std::int64_t>(r.n_max), join_reals(r.chosen_lambdas, kDefaultPrecision)});
    }
    return table;
}

Table cmd_lemma1(const std::string &alphas) {
    std::vector<double> as = parse_real_list(alphas);
    Table table{{"alpha", "outcome", "probability", "pt_eig_1", "pt_eig_2", "pt_eig_3", "pt_eig_4",
                 "min_pt_eigenvalue", "max_chsh", "ppt"},
                {}};
    for (const Lemma1Row &r : lemma1_check(as)) {
        table.rows.push_back({r.alpha, std::string(1, outcome_symbol(r.outcome)), r.probability, r.pt_spectrum[0],
                              r.pt_spectrum[1], r.pt_spectrum[2], r.pt_spectrum[3], r.min_pt_eigenvalue, r.max_chsh,
                              ppt_text(r.min_pt_eigenvalue)});
    }
    return table;
}

Table cmd_wstate(int rounds, bool rounds_given, const std::string &lambdas_text) {
    std::vector<double> lambdas = parse_real_list(lambdas_text);
    if (lambdas.size() == 1) {
        lambdas.assign(static_cast<std::size_t>(rounds), lambdas[0]);
    } else if (rounds_given && lambdas.size() != static_cast<std::size_t>(rounds)) {
        throw std::invalid_argument("--rounds disagrees with the length of --lambdas");
    }
    GameConfig cfg;
    cfg.initial = InitialState::w();
    cfg.schedule = lambdas;
    GameTranscript t = run_protocol(cfg);
    Table table{{"k", "lambda_k", "bell_sim", "bell_oracle", "min_pt_eigenvalue", "ppt"}, {}};
    for (const RoundRecord &r : t.rounds) {
        double min_pt = min_pt_eigenvalue(r.post_measurement_ab);
        table.rows.push_back({static_cast<std::int64_t>(r.k), r.lambda, r.bell_value,
                              optional_cell(r.oracle_bell_value), min_pt, ppt_text(min_pt)});
    }
    return table;
}

Table cmd_verify(std::size_t k_cap, std::size_t trials, std::uint64_t seed, bool &all_passed) {
    VerifyReport rep = verify_theorems(k_cap, trials, seed);
    all_passed = rep.all_passed();
    Table table{{"check", "passed", "worst", "tol"}, {}};
    for (const VerifyCheck &c : rep.checks) {
        table.rows.push_back({c.name, std::string(c.passed ? "pass" : "fail"), c.worst, c.tol});
    }
    return table;
}

}  // namespace

std::string format_number(double v, int precision) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", precision, v == 0 ? 0.0 : v);
    return buf;
}

std::string to_csv(const Table &table, int precision) {
    std::string out;
    for (std::size_t i = 0; i < table.columns.size(); i++) {
        out += (i ? "," : "") + csv_field(table.columns[i]);
    }
    out += '\n';
    for (const auto &row : table.rows) {
        for (std::size_t i = 0; i < row.size(); i++) {
            out += (i ? "," : "") + csv_field(cell_text(row[i], precision));
        }
        out += '\n';
    }
    return out;
}

std::string to_json(const Table &table, int precision) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto &row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); i++) {
            const std::string &key = table.columns[i];
            const Cell &c = row[i];
            if (const auto *d = std::get_if<double>(&c)) {
                if (std::isfinite(*d)) {
                    obj[key] = std::strtod(format_number(*d, precision).c_str(), nullptr);
                } else {
                    obj[key] = nullptr;
                }
            } else if (const auto *n = std::get_if<std::int64_t>(&c)) {
                obj[key] = *n;
            } else if (const auto *s = std::get_if<std::string>(&c)) {
                obj[key] = *s;
            } else {
                obj[key] = nullptr;
            }
        }
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

std::vector<double> parse_real_list(std::string_view text) {
    text = trim(text);
    if (text.empty()) {
        throw std::invalid_argument("empty list");
    }
    std::vector<double> out;
    if (text.find(':') != std::string_view::npos) {
        std::size_t c1 = text.find(':');
        std::size_t c2 = text.find(':', c1 + 1);
        if (c2 == std::string_view::npos || text.find(':', c2 + 1) != std::string_view::npos) {
            throw std::invalid_argument("range must be start:stop:step");
        }
        double start = parse_real(text.substr(0, c1));
        double stop = parse_real(text.substr(c1 + 1, c2 - c1 - 1));
        double step = parse_real(text.substr(c2 + 1));
        if (!(step > 0)) {
            throw std::invalid_argument("range step must be positive");
        }
        if (stop < start) {
            throw std::invalid_argument("range stop precedes start");
        }
        double span = std::floor((stop - start) / step + 1e-9);
        if (span > 1e6) {
            throw std::invalid_argument("range has too many points");
        }
        for (std::size_t i = 0; i <= static_cast<std::size_t>(span); i++) {
            out.push_back(snap(start + step * static_cast<double>(i)));
        }
        return out;
    }
    std::size_t pos = 0;
    while (true) {
        std::size_t comma = text.find(',', pos);
        out.push_back(parse_real(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos) {
            break;
        }
        pos = comma + 1;
    }
    return out;
}

int run_cli(const std::vector<std::string> &raw_args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Sequential quantum-switch Bell game simulator"};
    app.name("rabg");
    app.require_subcommand(1);
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    OutputOptions output;
    std::function<int()> action;

    RunArgs run_args;
    CLI::App *run = app.add_subcommand("run", "Play the game from a GHZ start and cross-check every round");
    run->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    run->add_option("--alpha", run_args.alpha, "GHZ weight")->check(CLI::Range(0.0, 1.0));
    CLI::Option *lam = run->add_option("--lambdas", run_args.lambdas, "Sharpness per round, comma list or range");
    CLI::Option *geo = run->add_option("--geometric", run_args.geometric, "k,q: lambda_m = q^-(k-m)");
    lam->excludes(geo);
    run->add_option("--mode", run_args.mode, "deterministic or sampled")
        ->check(CLI::IsMember({"deterministic", "sampled"}));
    run->add_option("--seed", run_args.seed, "RNG seed for sampled mode")->envname("RABG_SEED");
    run->add_option("--bmin", run_args.b_min, "Violation threshold")->check(CLI::Range(2.0, 2 * std::sqrt(2.0)));
    add_output_options(run, output);
    run->callback([&] { action = [&] { emit(cmd_run(run_args, err), output, out); return int(EXIT_OK); }; });

    std::string grid;
    std::string nmax_alphas = "0.1,0.3,0.5";
    CLI::App *nmax = app.add_subcommand("nmax", "Greedy maximal round count over a threshold x alpha grid");
    nmax->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    nmax->add_option("--bmin-grid", grid, "start:stop:step")->required();
    nmax->add_option("--alphas", nmax_alphas, "Comma list or range");
    add_output_options(nmax, output);
    nmax->callback([&] { action = [&] { emit(cmd_nmax(grid, nmax_alphas), output, out); return int(EXIT_OK); }; });

    std::string l1_alphas = "0.1:0.9:0.1";
    CLI::App *lemma1 = app.add_subcommand("lemma1", "Coherent-control start: PT spectra and CHSH");
    lemma1->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    lemma1->add_option("--alphas", l1_alphas, "Comma list or range");
    add_output_options(lemma1, output);
    lemma1->callback([&] { action = [&] { emit(cmd_lemma1(l1_alphas), output, out); return int(EXIT_OK); }; });

    int w_rounds = 5;
    std::string w_lambdas = "0.5";
    CLI::App *wstate = app.add_subcommand("wstate", "W-state start: per-round Bell values and PPT flags");
    wstate->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    CLI::Option *w_rounds_opt = wstate->add_option("--rounds", w_rounds, "Number of rounds")->check(CLI::Range(1, 1000));
    wstate->add_option("--lambdas", w_lambdas, "One value for every round, or one per round");
    add_output_options(wstate, output);
    wstate->callback([&] {
        action = [&] {
            emit(cmd_wstate(w_rounds, w_rounds_opt->count() > 0, w_lambdas), output, out);
            return int(EXIT_OK);
        };
    });

    std::size_t k_cap = 8;
    std::size_t trials = 200;
    std::uint64_t v_seed = 42;
    CLI::App *verify = app.add_subcommand("verify", "Randomized simulation-vs-closed-form sweep");
    verify->option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    verify->add_option("--kcap", k_cap, "Longest schedule")->check(CLI::Range(1, 10));
    verify->add_option("--trials", trials, "Random schedules")->check(CLI::Range(0, 1000000));
    verify->add_option("--seed", v_seed, "Sweep seed")->envname("RABG_SEED");
    add_output_options(verify, output);
    verify->callback([&] {
        action = [&] {
            bool passed = false;
            emit(cmd_verify(k_cap, trials, v_seed, passed), output, out);
            return int(passed ? EXIT_OK : EXIT_VERIFY_FAILED);
        };
    });

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? int(EXIT_OK) : int(EXIT_BAD_FLAGS);
    }

    try {
        return action();
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::OracleMismatch ? EXIT_ORACLE_MISMATCH : EXIT_BAD_FLAGS;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_BAD_FLAGS;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return EXIT_BAD_FLAGS;
    }
}

}  // namespace rabg::cli
