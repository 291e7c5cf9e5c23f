#pragma once

#include <cstdint>
#include <string>

namespace pforge::cli {

struct RunConfig {
    std::string command;
    std::int64_t dim = 0;
    std::int64_t r = 0;
    std::int64_t s = 0;
    bool has_r = false;
    bool has_s = false;
    bool paper_curve = false;
    std::string algo = "lex-greedy";
    std::uint64_t seed = 0;
    std::string out = "packing.txt";
    std::string input;
    std::string format = "text";
    bool deterministic = false;
    std::uint64_t budget_vertices = 10'000'000;
    std::string grid = "small";
    unsigned threads = 1;
};

// Exit codes: 0 success, 1 bad arguments/input, 2 budget exceeded,
// 3 verification or property failure.
int cmd_build(const RunConfig& cfg);
int cmd_bounds(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);
int cmd_check(const RunConfig& cfg);
int cmd_bench(const RunConfig& cfg);

}  // namespace pforge::cli
