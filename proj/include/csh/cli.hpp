#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "csh/floer.hpp"
#include "csh/json_io.hpp"
#include "csh/mirror.hpp"

namespace csh::cli {

enum class Command { Disc, Annulus, Rabinowitz, Mirror, Crosscheck, Selftest };
enum class Output { Table, Json };
enum class DiscSide { Cohomology, Homology };

std::string command_name(Command c);

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunRequest {
    Command command = Command::Disc;
    Output output = Output::Table;

    // disc, rabinowitz
    std::string rho;
    DiscSide side = DiscSide::Cohomology;
    // annulus, mirror
    std::string rho1;
    std::string rho2;
    // mirror
    int m = 1;
    int k = 1;
    std::string interval;  // "a:b", alternative to rho1/rho2
    // crosscheck; nullopt = default grid
    std::optional<std::vector<std::pair<std::string, std::string>>> grid;

    // schedule (a0, b0, step, count); a0 defaults to -b0, count is derived from b_max when unset
    std::optional<std::string> a0;
    std::string b0 = "5";
    std::string step = "5";
    std::optional<int> count;
    std::string b_max = "20";
    std::optional<int> n;
    int depth = 3;
    Backend backend = Backend::Parallel;
};

struct ResultRow {
    std::vector<std::pair<std::string, std::string>> cells;  // table columns, inputs first
    std::string verdict;
    bool ok = true;
    Json json;
};

struct RunResult {
    std::vector<ResultRow> rows;
    int exit_code = 0;
    std::string error;  // set when exit_code != 0
    Json document;      // full JSON output
};

// exact fraction; decimals and other spellings are rejected with the failing position
Rational parse_fraction(const std::string& what, const std::string& text);
std::pair<Rational, Rational> parse_pair(const std::string& what, const std::string& text);
// "a:b,c:d"; "none" is the empty grid
std::vector<std::pair<std::string, std::string>> parse_grid(const std::string& text);
std::vector<std::pair<std::string, std::string>> default_grid();

Schedule request_schedule(const RunRequest& r);

// exit codes: 0 ok, 1 usage, 2 no stabilization, 3 inconsistency
RunResult run(const RunRequest& r);

std::string render_table(const RunResult& res);
std::string render_json(const RunResult& res);

}  // namespace csh::cli
