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

#ifndef RABG_TOOLS_CLI_H
#define RABG_TOOLS_CLI_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rabg::cli {

enum ExitCode : int {
    EXIT_OK = 0,
    EXIT_VERIFY_FAILED = 1,
    EXIT_BAD_FLAGS = 2,
    EXIT_ORACLE_MISMATCH = 3,
};

/// Empty cell: blank in CSV, null in JSON.
struct Null {};
using Cell = std::variant<Null, double, std::int64_t, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// printf "%.*g" with the given significant digits; "nan", "inf", "-inf"
/// for non-finite values.
std::string format_number(double v, int precision);

/// Header plus one line per row, '\n' terminated. Fields containing a comma,
/// quote or newline are quoted.
std::string to_csv(const Table &table, int precision);

/// Array of row objects keyed by column name. Doubles are rounded through
/// format_number first so both formats carry the same values.
std::string to_json(const Table &table, int precision);

/// "a,b,c" or "start:stop:step" (inclusive stop, step > 0). Throws
/// std::invalid_argument on malformed input.
std::vector<double> parse_real_list(std::string_view text);

/// Entry point shared by the binary and the tests. args excludes argv[0].
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace rabg::cli

#endif
