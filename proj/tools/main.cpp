#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "pforge/parallel.hpp"

int main(int argc, char** argv) {
    using pforge::cli::RunConfig;
    RunConfig cfg;
    cfg.threads = pforge::default_thread_count();

    CLI::App app{"packing-forge: lattice sphere packings with verified bounds"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd, bool needs_params) {
        if (needs_params) {
            cmd->add_option("--dim,-n", cfg.dim, "dimension n")->required();
            cmd->add_option("--r", cfg.r, "sphere radius r")
                ->each([&](const std::string&) { cfg.has_r = true; });
            cmd->add_option("--s", cfg.s, "inner cube side s")
                ->each([&](const std::string&) { cfg.has_s = true; });
            cmd->add_flag("--paper-curve", cfg.paper_curve,
                          "use r = 2n^2, s = 2n^4");
        }
        cmd->add_option("--seed", cfg.seed, "random seed");
        cmd->add_option("--format", cfg.format, "text | json")
            ->check(CLI::IsMember({"text", "json"}));
        cmd->add_flag("--deterministic", cfg.deterministic,
                      "suppress timestamps and timings");
        cmd->add_option("--budget-vertices", cfg.budget_vertices,
                        "maximum graph vertex count");
    };

    auto* build = app.add_subcommand("build", "construct and verify a packing");
    add_common(build, true);
    build->add_option("--algo", cfg.algo, "lex-greedy | min-degree | exact")
        ->check(CLI::IsMember({"lex-greedy", "min-degree", "exact"}));
    build->add_option("--out", cfg.out, "packing file path (default packing.txt)");

    auto* bounds = app.add_subcommand("bounds", "evaluate density and degree bounds");
    add_common(bounds, true);

    auto* verify = app.add_subcommand("verify", "re-verify an exported packing file");
    verify->add_option("file", cfg.input, "packing file")->required();
    add_common(verify, false);

    auto* check = app.add_subcommand("check", "run the property sweep");
    check->add_option("--grid", cfg.grid, "small | full");
    add_common(check, false);

    auto* bench = app.add_subcommand("bench", "time graph construction and algorithms");
    add_common(bench, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    if (build->parsed()) return pforge::cli::cmd_build(cfg);
    if (bounds->parsed()) return pforge::cli::cmd_bounds(cfg);
    if (verify->parsed()) return pforge::cli::cmd_verify(cfg);
    if (check->parsed()) return pforge::cli::cmd_check(cfg);
    if (bench->parsed()) return pforge::cli::cmd_bench(cfg);
    return 1;
}
