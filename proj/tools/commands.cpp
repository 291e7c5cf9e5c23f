#include "commands.hpp"

#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <vector>

#include "json.hpp"
#include "pforge/bounds.hpp"
#include "pforge/geometry.hpp"
#include "pforge/independence.hpp"
#include "pforge/lattice_graph.hpp"
#include "pforge/oracle.hpp"
#include "pforge/packing.hpp"

namespace pforge::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitBadArgs = 1;
constexpr int kExitBudget = 2;
constexpr int kExitVerification = 3;

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string fmt_predicted(double v) {
    if (v < 1e15 && v == std::floor(v)) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.0f", v);
        return buf;
    }
    return fmt6(v);
}

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ordered_json json_or_null(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

ordered_json bound_report_json(const BoundReport& rep) {
    ordered_json j;
    j["params"] = {{"n", rep.params.n}, {"r", rep.params.r}, {"s", rep.params.s}};
    j["scale"] = "log2";
    j["d_upper"] = rep.d_upper;
    if (rep.t_upper_generic) {
        j["t_upper_generic"] = rep.t_upper_generic->log2_value;
        j["t_upper_generic_exact_shell_sum"] = rep.t_upper_generic->exact_shell_sum;
    } else {
        j["t_upper_generic"] = nullptr;
    }
    j["t_upper_paper"] = json_or_null(rep.t_upper_paper);
    j["minkowski_density"] = rep.minkowski_density;
    j["minkowski_density_s_plus_1"] = rep.minkowski_density_s_plus_1;
    j["improved_density"] = json_or_null(rep.improved_density);
    j["improved_density_valid"] = rep.improved_density.has_value();
    j["improved_density_s_plus_1"] = json_or_null(rep.improved_density_s_plus_1);
    j["alpha_lower_trivial"] = rep.alpha_lower_trivial;
    j["alpha_lower_jv"] = rep.alpha_lower_jv.log2_value;
    j["alpha_lower_jv_formula_valid"] = rep.alpha_lower_jv.formula_valid;
    j["theorem1_constant"] = rep.theorem1_constant;
    j["complexity"] = {
        {"log2_vertex_count", rep.complexity.log2_vertex_count},
        {"log2_work", rep.complexity.log2_work},
        {"gamma", std::isnan(rep.complexity.gamma) ? ordered_json(nullptr)
                                                   : ordered_json(rep.complexity.gamma)},
        {"log2_paper_form", json_or_null(rep.complexity.log2_paper_form)},
    };
    return j;
}

void print_bound_report_text(std::ostream& os, const BoundReport& rep) {
    auto line = [&](const char* name, const std::string& value) {
        os << "  " << name;
        for (std::size_t i = std::string(name).size(); i < 28; ++i) os << ' ';
        os << "= " << value << '\n';
    };
    os << "bound report (log2 scale), n=" << rep.params.n << " r=" << fmt6(rep.params.r)
       << " s=" << fmt6(rep.params.s) << '\n';
    line("d_upper", fmt6(rep.d_upper));
    line("t_upper_generic",
         rep.t_upper_generic
             ? fmt6(rep.t_upper_generic->log2_value) +
                   (rep.t_upper_generic->exact_shell_sum ? "" : " (max-term bound)")
             : std::string("n/a (requires r >= sqrt(n)/2)"));
    line("t_upper_paper",
         rep.t_upper_paper ? fmt6(*rep.t_upper_paper) : std::string("n/a (requires r = 2n^2)"));
    line("minkowski_density", fmt6(rep.minkowski_density));
    line("minkowski_density_s_plus_1", fmt6(rep.minkowski_density_s_plus_1));
    line("improved_density", rep.improved_density ? fmt6(*rep.improved_density)
                                                  : std::string("invalid (bracket <= 0)"));
    line("improved_density_s_plus_1",
         rep.improved_density_s_plus_1 ? fmt6(*rep.improved_density_s_plus_1)
                                       : std::string("invalid (bracket <= 0)"));
    line("alpha_lower_trivial", fmt6(rep.alpha_lower_trivial));
    line("alpha_lower_jv", fmt6(rep.alpha_lower_jv.log2_value) +
                               (rep.alpha_lower_jv.formula_valid ? "" : " (trivial fallback)"));
    line("theorem1_constant", fmt6(rep.theorem1_constant));
    line("complexity.log2_vertices", fmt6(rep.complexity.log2_vertex_count));
    line("complexity.log2_work", fmt6(rep.complexity.log2_work));
    if (!std::isnan(rep.complexity.gamma))
        line("complexity.gamma", fmt6(rep.complexity.gamma));
    if (rep.complexity.log2_paper_form)
        line("complexity.log2_paper_form", fmt6(*rep.complexity.log2_paper_form));
}

FormulaParams formula_params_from(const RunConfig& cfg) {
    if (cfg.paper_curve) return FormulaParams::paper_curve(cfg.dim);
    if (!cfg.has_r || !cfg.has_s)
        throw std::invalid_argument("need --r and --s (or --paper-curve)");
    return FormulaParams{cfg.dim, static_cast<double>(cfg.r),
                         static_cast<double>(cfg.s)};
}

PackingParams packing_params_from(const RunConfig& cfg) {
    if (cfg.dim < 1 || cfg.dim > 1'000'000)
        throw std::invalid_argument("dimension out of range");
    if (cfg.paper_curve) {
        // Refuse infeasible curve points before materializing the integers.
        const double nd = static_cast<double>(cfg.dim);
        const double log2_vertices = nd * std::log2(2.0 * nd * nd * nd * nd + 1.0);
        if (log2_vertices > std::log2(static_cast<double>(cfg.budget_vertices)))
            throw BudgetExceeded("build: paper-curve instance exceeds vertex budget",
                                 std::exp2(std::min(log2_vertices, 996.0)));
        const std::int64_t n = cfg.dim;
        return PackingParams{static_cast<int>(n), 2 * n * n, 2 * n * n * n * n, true};
    }
    if (!cfg.has_r || !cfg.has_s)
        throw std::invalid_argument("need --r and --s (or --paper-curve)");
    PackingParams p{static_cast<int>(cfg.dim), cfg.r, cfg.s, false};
    p.validate();
    return p;
}

IndependentSet run_algorithm(const std::string& algo, const LatticeGraph& g) {
    if (algo == "lex-greedy") return greedy_maximal_is(g);
    if (algo == "min-degree") return min_degree_greedy_is(g);
    if (algo == "exact") return exact_max_is(g);
    throw std::invalid_argument("unknown algorithm '" + algo +
                                "' (expected lex-greedy | min-degree | exact)");
}

int run_guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what()
                  << " (predicted " << fmt_predicted(e.predicted()) << ")\n";
        return kExitBudget;
    } catch (const VerificationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        for (const auto& v : e.report().violations)
            std::cerr << "  centers " << v.i << " and " << v.j
                      << " at squared distance " << v.sq_dist << '\n';
        for (const auto i : e.report().out_of_cube)
            std::cerr << "  center " << i << " outside the inner cube\n";
        return kExitVerification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadArgs;
    }
}

// Measured statistics are worth reporting only when cheap relative to the
// build itself.
bool graph_stats_affordable(const LatticeGraph& g) {
    return g.vertex_count() <= 2'000'000 &&
           g.edge_count * static_cast<std::uint64_t>(g.d_max + 1) <= 200'000'000;
}

}  // namespace

int cmd_build(const RunConfig& cfg) {
    return run_guarded([&]() -> int {
        const PackingParams params = packing_params_from(cfg);
        Budget budget;
        budget.max_vertices = cfg.budget_vertices;

        const LatticeGraph g = build_graph(params, budget, cfg.threads);
        const IndependentSet iset = run_algorithm(cfg.algo, g);
        const Packing pk = assemble(params, iset, g);
        const VerificationReport vrep = verify(pk, cfg.threads);

        std::optional<std::uint64_t> triangles, t_max;
        if (graph_stats_affordable(g)) {
            triangles = triangle_count(g);
            t_max = neighborhood_edge_max(g);
        }

        {
            std::ofstream out(cfg.out, std::ios::binary);
            if (!out) throw std::invalid_argument("cannot open output file " + cfg.out);
            export_packing(pk, out);
        }

        std::optional<BoundReport> bounds;
        if (params.s >= 1) bounds = make_bound_report(FormulaParams::from(params));

        if (cfg.format == "json") {
            ordered_json j;
            j["command"] = "build";
            if (!cfg.deterministic) j["timestamp"] = timestamp_utc();
            j["params"] = {{"n", params.n},
                           {"r", params.r},
                           {"s", params.s},
                           {"paper_regime", params.paper_regime}};
            j["graph"] = {{"vertex_count", g.vertex_count()},
                          {"edge_count", g.edge_count},
                          {"d_max", g.d_max},
                          {"comparisons", g.comparisons}};
            j["graph"]["triangle_count"] =
                triangles ? ordered_json(*triangles) : ordered_json(nullptr);
            j["graph"]["neighborhood_edge_max"] =
                t_max ? ordered_json(*t_max) : ordered_json(nullptr);
            j["independent_set"] = {{"algorithm", to_string(iset.algorithm)},
                                    {"size", iset.size()},
                                    {"maximal", iset.is_maximal}};
            if (triangles)
                j["independent_set"]["aks_lower_bound"] =
                    aks_lower_bound(g.vertex_count(), g.d_max, *triangles);
            if (t_max)
                j["independent_set"]["jv_lower_bound"] =
                    jv_lower_bound(g.vertex_count(), g.d_max, *t_max);
            j["packing"] = {{"count", pk.count()},
                            {"density", static_cast<double>(pk.density())},
                            {"density_log2", pk.density_log2()},
                            {"file", cfg.out}};
            j["verification"] = {
                {"pass", vrep.pass()},
                {"separation_ok", vrep.separation_ok},
                {"containment_ok", vrep.containment_ok},
                {"min_squared_distance",
                 vrep.min_squared_distance ? ordered_json(*vrep.min_squared_distance)
                                           : ordered_json(nullptr)},
                {"exhaustive_pairs", vrep.exhaustive_pairs}};
            if (bounds) j["bounds"] = bound_report_json(*bounds);
            std::cout << j.dump(2) << '\n';
        } else {
            std::ostream& os = std::cout;
            os << "build n=" << params.n << " r=" << params.r << " s=" << params.s
               << " algo=" << cfg.algo << '\n';
            if (!cfg.deterministic) os << "time: " << timestamp_utc() << '\n';
            os << "graph: " << g.vertex_count() << " vertices, " << g.edge_count
               << " edges, d_max " << g.d_max << '\n';
            if (triangles)
                os << "graph: " << *triangles << " triangles, neighborhood edge max "
                   << *t_max << '\n';
            os << "independent set (" << to_string(iset.algorithm)
               << "): " << iset.size() << " vertices\n";
            os << "packing: " << pk.count() << " centers, density "
               << fmt6(static_cast<double>(pk.density())) << " (log2 "
               << fmt6(pk.density_log2()) << ")\n";
            os << "verification: " << (vrep.pass() ? "pass" : "FAIL");
            if (vrep.min_squared_distance)
                os << ", min squared distance " << *vrep.min_squared_distance;
            os << '\n';
            os << "packing file: " << cfg.out << '\n';
            if (bounds) print_bound_report_text(os, *bounds);
        }

        if (!vrep.pass())
            throw VerificationError("assembled packing failed verification", vrep);
        return kExitOk;
    });
}

int cmd_bounds(const RunConfig& cfg) {
    return run_guarded([&]() -> int {
        const FormulaParams fp = formula_params_from(cfg);
        const BoundReport rep = make_bound_report(fp);

        // Side-by-side comparison values on the improvement curve.
        const double n = static_cast<double>(fp.n);
        std::optional<double> improved_vs_target;
        if (rep.improved_density)
            improved_vs_target = *rep.improved_density - (std::log2(0.01 * n) - n);
        std::optional<double> t_over_d_sq;
        if (rep.t_upper_paper) t_over_d_sq = *rep.t_upper_paper - 2.0 * rep.d_upper;

        if (cfg.format == "json") {
            ordered_json j;
            j["command"] = "bounds";
            if (!cfg.deterministic) j["timestamp"] = timestamp_utc();
            j["report"] = bound_report_json(rep);
            j["improved_minus_log2_001n2n"] = json_or_null(improved_vs_target);
            j["t_paper_minus_2d_log2"] = json_or_null(t_over_d_sq);
            std::cout << j.dump(2) << '\n';
        } else {
            if (!cfg.deterministic) std::cout << "time: " << timestamp_utc() << '\n';
            print_bound_report_text(std::cout, rep);
            if (improved_vs_target)
                std::cout << "  improved - log2(0.01 n 2^-n)  = " << fmt6(*improved_vs_target)
                          << '\n';
            if (t_over_d_sq)
                std::cout << "  t_paper - 2 d_upper (log2)    = " << fmt6(*t_over_d_sq)
                          << '\n';
        }
        return kExitOk;
    });
}

int cmd_verify(const RunConfig& cfg) {
    return run_guarded([&]() -> int {
        std::ifstream in(cfg.input, std::ios::binary);
        if (!in) throw std::invalid_argument("cannot open packing file " + cfg.input);
        const Packing pk = import_packing(in);  // throws on any failure
        const VerificationReport rep = verify(pk, cfg.threads);
        std::cout << "packing: n=" << pk.params.n << " r=" << pk.params.r
                  << " s=" << pk.params.s << " count=" << pk.count() << '\n';
        std::cout << "density: " << fmt6(static_cast<double>(pk.density())) << '\n';
        std::cout << "verification: " << (rep.pass() ? "pass" : "FAIL");
        if (rep.min_squared_distance)
            std::cout << ", min squared distance " << *rep.min_squared_distance;
        std::cout << '\n';
        return kExitOk;
    });
}

int cmd_bench(const RunConfig& cfg) {
    return run_guarded([&]() -> int {
        const PackingParams params = packing_params_from(cfg);
        Budget budget;
        budget.max_vertices = cfg.budget_vertices;

        using clock = std::chrono::steady_clock;
        const auto t0 = clock::now();
        const LatticeGraph g = build_graph(params, budget, cfg.threads);
        const auto t1 = clock::now();

        auto ms = [](auto a, auto b) {
            return std::chrono::duration<double, std::milli>(b - a).count();
        };

        std::cout << "bench n=" << params.n << " r=" << params.r << " s=" << params.s
                  << '\n';
        std::cout << "graph: " << g.vertex_count() << " vertices, " << g.edge_count
                  << " edges, d_max " << g.d_max << ", " << g.comparisons
                  << " comparisons";
        if (!cfg.deterministic) std::cout << ", " << fmt6(ms(t0, t1)) << " ms";
        std::cout << '\n';

        for (const char* algo : {"lex-greedy", "min-degree"}) {
            const auto a0 = clock::now();
            const IndependentSet iset = run_algorithm(algo, g);
            const auto a1 = clock::now();
            std::cout << algo << ": " << iset.size() << " vertices";
            if (!cfg.deterministic) std::cout << ", " << fmt6(ms(a0, a1)) << " ms";
            std::cout << '\n';
        }
        if (g.vertex_count() <= 512) {
            const auto a0 = clock::now();
            const IndependentSet iset = exact_max_is(g);
            const auto a1 = clock::now();
            std::cout << "exact: " << iset.size() << " vertices";
            if (!cfg.deterministic) std::cout << ", " << fmt6(ms(a0, a1)) << " ms";
            std::cout << '\n';
        }
        return kExitOk;
    });
}

}  // namespace pforge::cli
