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

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rabg::cli {
namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string &text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string f;
        while (std::getline(ls, f, ',')) {
            fields.push_back(f);
        }
        if (!line.empty() && line.back() == ',') {
            fields.emplace_back();
        }
        rows.push_back(fields);
    }
    return rows;
}

std::filesystem::path temp_file(const std::string &name) {
    return std::filesystem::temp_directory_path() / ("rabg_cli_test_" + name);
}

TEST(FormatNumber, SignificantDigits) {
    EXPECT_EQ(format_number(2.0099751242241779, 12), "2.00997512422");
    EXPECT_EQ(format_number(0.5, 12), "0.5");
    EXPECT_EQ(format_number(1e-20, 3), "1e-20");
    EXPECT_EQ(format_number(std::numeric_limits<double>::quiet_NaN(), 12), "nan");
    EXPECT_EQ(format_number(-std::numeric_limits<double>::infinity(), 12), "-inf");
}

TEST(ParseRealList, CommaListsAndRanges) {
    EXPECT_EQ(parse_real_list("0.1,0.5,1"), (std::vector<double>{0.1, 0.5, 1.0}));
    std::vector<double> r = parse_real_list("0.1:0.9:0.1");
    ASSERT_EQ(r.size(), 9u);
    EXPECT_EQ(r[2], 0.3);
    EXPECT_EQ(r.back(), 0.9);
    EXPECT_EQ(parse_real_list("2.2:2.2:1"), (std::vector<double>{2.2}));
    EXPECT_THROW(parse_real_list(""), std::invalid_argument);
    EXPECT_THROW(parse_real_list("0.1,,0.2"), std::invalid_argument);
    EXPECT_THROW(parse_real_list("1:0:0.1"), std::invalid_argument);
    EXPECT_THROW(parse_real_list("0:1:0"), std::invalid_argument);
    EXPECT_THROW(parse_real_list("abc"), std::invalid_argument);
}

TEST(Tables, CsvQuotingAndNulls) {
    Table t{{"name", "value"}, {{std::string("a,b"), 1.5}, {Null{}, std::int64_t{3}}}};
    EXPECT_EQ(to_csv(t, 12), "name,value\n\"a,b\",1.5\n,3\n");
    nlohmann::json j = nlohmann::json::parse(to_json(t, 12));
    ASSERT_EQ(j.size(), 2u);
    EXPECT_EQ(j[0]["name"], "a,b");
    EXPECT_EQ(j[0]["value"], 1.5);
    EXPECT_TRUE(j[1]["name"].is_null());
    EXPECT_EQ(j[1]["value"], 3);
}

TEST(Run, ExampleOutput) {
    Result r = run({"run", "--alpha", "0.5", "--lambdas", "0.1,1.0"});
    ASSERT_EQ(r.code, EXIT_OK) << r.err;
    std::vector<std::vector<std::string>> rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0],
              (std::vector<std::string>{"k", "lambda_k", "p_plus", "bell_sim", "bell_oracle", "discrepancy", "outcome"}));
    EXPECT_EQ(rows[1][3], "2.00997512422");
    EXPECT_EQ(rows[2][3], "2.82133829032");
    EXPECT_EQ(rows[1][6], "both");
}

TEST(Run, CsvAndJsonCarryTheSameValues) {
    std::vector<std::string> base = {"run", "--alpha", "0.3", "--geometric", "4,5", "--mode", "sampled", "--seed", "3"};
    Result csv = run(base);
    base.insert(base.end(), {"--format", "json"});
    Result json = run(base);
    ASSERT_EQ(csv.code, 0);
    ASSERT_EQ(json.code, 0);
    std::vector<std::vector<std::string>> rows = csv_rows(csv.out);
    nlohmann::json j = nlohmann::json::parse(json.out);
    ASSERT_EQ(j.size(), rows.size() - 1);
    for (std::size_t i = 0; i < j.size(); i++) {
        for (std::size_t c = 0; c < rows[0].size(); c++) {
            const nlohmann::json &v = j[i][rows[0][c]];
            const std::string &cell = rows[i + 1][c];
            if (v.is_string()) {
                EXPECT_EQ(v.get<std::string>(), cell);
            } else if (v.is_number_integer()) {
                EXPECT_EQ(std::to_string(v.get<std::int64_t>()), cell);
            } else {
                EXPECT_EQ(v.get<double>(), std::stod(cell)) << rows[0][c];
            }
        }
    }
}

TEST(Run, ByteReproducibleUnderFixedSeed) {
    std::vector<std::string> args = {"run", "--alpha", "0.42", "--lambdas", "0.1:0.9:0.2", "--mode", "sampled",
                                     "--seed", "77"};
    Result a = run(args);
    Result b = run(args);
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
}

TEST(Run, SeedFallsBackToEnvironment) {
    std::vector<std::string> args = {"run", "--alpha", "0.42", "--lambdas", "0.3,0.6,0.9", "--mode", "sampled"};
    Result explicit_seed = run({"run", "--alpha", "0.42", "--lambdas", "0.3,0.6,0.9", "--mode", "sampled", "--seed",
                                "1234"});
    setenv("RABG_SEED", "1234", 1);
    Result from_env = run(args);
    unsetenv("RABG_SEED");
    EXPECT_EQ(explicit_seed.out, from_env.out);
}

TEST(Run, WritesToFile) {
    std::filesystem::path p = temp_file("run.csv");
    Result r = run({"run", "--alpha", "0.5", "--lambdas", "0.5", "--out", p.string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(p);
    std::stringstream content;
    content << in.rdbuf();
    EXPECT_EQ(content.str(), run({"run", "--alpha", "0.5", "--lambdas", "0.5"}).out);
    std::filesystem::remove(p);
}

TEST(ExitCodes, BadInputIsRejected) {
    EXPECT_EQ(run({"run", "--alpha", "0.5", "--lambdas", "1.5"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"run", "--alpha", "0.5", "--lambdas", "0.5", "--bogus"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"run", "--alpha", "0.5", "--lambdas", "0.5", "--bmin", "1.9"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"run", "--alpha", "0.5", "--lambdas", "0.5", "--geometric", "3,10"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"run", "--alpha", "0.5", "--lambdas", "0.5", "--precision", "0"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"nmax", "--bmin-grid", "2.2,2.3"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"nmax"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"verify", "--kcap", "11"}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({}).code, EXIT_BAD_FLAGS);
    EXPECT_EQ(run({"run", "--help"}).code, EXIT_OK);
}

TEST(Nmax, SpotValue) {
    Result r = run({"nmax", "--bmin-grid", "2.2:2.2:1", "--alphas", "0.5"});
    ASSERT_EQ(r.code, 0) << r.err;
    std::vector<std::vector<std::string>> rows = csv_rows(r.out);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0], (std::vector<std::string>{"b_min", "alpha", "n_max", "lambdas"}));
    EXPECT_EQ(rows[1][2], "3");
}

TEST(Lemma1, AlphaZeroRow) {
    Result r = run({"lemma1", "--alphas", "0", "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    nlohmann::json j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j.size(), 2u);
    for (const nlohmann::json &row : j) {
        EXPECT_NEAR(row["max_chsh"].get<double>(), 0.0, 1e-12);
        EXPECT_EQ(row["ppt"], "PPT");
    }
}

TEST(Verify, PassesWithDefaults) {
    Result r = run({"verify", "--kcap", "4", "--trials", "20"});
    EXPECT_EQ(r.code, EXIT_OK) << r.out;
    EXPECT_EQ(r.out.find(",fail,"), std::string::npos);
}

TEST(Config, ExplicitFlagsWin) {
    std::filesystem::path p = temp_file("cfg.ini");
    {
        std::ofstream f(p);
        f << "# comment\nalpha=0.3\nlambdas=0.2,0.4\nprecision=6\n";
    }
    Result from_file = run({"run", "--config", p.string()});
    Result explicit_flags = run({"run", "--alpha", "0.3", "--lambdas", "0.2,0.4", "--precision", "6"});
    ASSERT_EQ(from_file.code, 0) << from_file.err;
    EXPECT_EQ(from_file.out, explicit_flags.out);

    Result overridden = run({"run", "--config", p.string(), "--alpha", "0.5"});
    Result expected = run({"run", "--alpha", "0.5", "--lambdas", "0.2,0.4", "--precision", "6"});
    EXPECT_EQ(overridden.out, expected.out);
    std::filesystem::remove(p);

    EXPECT_EQ(run({"run", "--config", temp_file("missing.ini").string()}).code, EXIT_BAD_FLAGS);
}

}  // namespace
}  // namespace rabg::cli
