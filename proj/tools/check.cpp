#include <cmath>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "pforge/bounds.hpp"
#include "pforge/geometry.hpp"
#include "pforge/independence.hpp"
#include "pforge/lattice_graph.hpp"
#include "pforge/oracle.hpp"
#include "pforge/packing.hpp"

namespace pforge::cli {

namespace {

// A property returns nullopt on success or a culprit description.
using Property = std::function<std::optional<std::string>()>;

struct NamedProperty {
    std::string name;
    Property run;
};

std::string cell_name(int n, double rho, double delta) {
    std::ostringstream os;
    os << "n=" << n << " rho=" << rho << " delta=" << delta;
    return os.str();
}

std::vector<NamedProperty> make_properties(const RunConfig& cfg) {
    const bool full = cfg.grid == "full";
    const std::uint64_t mc_samples = full ? 1'000'000 : 200'000;
    const unsigned threads = cfg.threads;
    const std::uint64_t seed = cfg.seed;
    std::vector<NamedProperty> props;

    props.push_back({"degree-bound-grid", [=]() -> std::optional<std::string> {
        for (int n = 1; n <= 3; ++n)
            for (std::int64_t r = 1; r <= 4; ++r) {
                const auto count = count_ball_lattice_points(n, r);
                const double bound = std::exp2(log2_d_n_upper(n, static_cast<double>(r)));
                if (static_cast<double>(count) > bound)
                    return "n=" + std::to_string(n) + " r=" + std::to_string(r) +
                           ": count " + std::to_string(count) + " > bound";
            }
        return std::nullopt;
    }});

    props.push_back({"volume-chain", [=]() -> std::optional<std::string> {
        for (int n = 2; n <= 10; ++n)
            for (double rho : {0.5, 1.0, 3.5})
                for (int i = 1; i <= 19; ++i) {
                    const double delta = 0.05 * i;
                    const auto g = CapGeometry::make(n, rho, delta);
                    const double exact = intersection_volume_exact(g);
                    const double cyl = intersection_volume_cylinder_bound(g);
                    const double relaxed = intersection_volume_relaxed_bound(g);
                    const double slack = 1e-12 * std::max(1.0, exact);
                    if (!(exact <= cyl + slack && cyl <= relaxed + slack))
                        return cell_name(n, rho, delta) + ": chain violated";
                }
        return std::nullopt;
    }});

    props.push_back({"volume-mc", [=]() -> std::optional<std::string> {
        const std::vector<int> dims = full ? std::vector<int>{2, 3, 4, 5, 6}
                                           : std::vector<int>{2, 3};
        const std::vector<double> deltas =
            full ? std::vector<double>{0.1, 0.25, 0.49} : std::vector<double>{0.25};
        const std::vector<double> rhos =
            full ? std::vector<double>{1.0, 3.5} : std::vector<double>{1.0};
        for (const int n : dims)
            for (const double rho : rhos)
                for (const double delta : deltas) {
                    const auto g = CapGeometry::make(n, rho, delta);
                    const double exact = intersection_volume_exact(g);
                    const auto est = mc_ball_intersection(n, rho, delta, mc_samples,
                                                          seed, threads);
                    if (std::abs(est.mean - exact) > 3.0 * est.std_error)
                        return cell_name(n, rho, delta) + ": |" + std::to_string(est.mean) +
                               " - " + std::to_string(exact) + "| > 3 sigma";
                }
        return std::nullopt;
    }});

    props.push_back({"coincident-limit", [=]() -> std::optional<std::string> {
        for (int n = 2; n <= 10; ++n) {
            const auto g = CapGeometry::make(n, 1.0, 1e-6);
            const double whole = unit_ball_volume(n);
            const double v = intersection_volume_exact(g);
            if (std::abs(v - whole) > 1e-4 * whole)
                return "n=" + std::to_string(n) + ": delta->0 limit off";
        }
        return std::nullopt;
    }});

    props.push_back({"graph-oracle", [=]() -> std::optional<std::string> {
        const std::vector<PackingParams> instances = {
            {1, 1, 8}, {2, 1, 8}, {2, 2, 8}, {3, 1, 4}};
        for (const auto& p : instances) {
            const auto g = build_graph(p, {}, threads);
            const auto brute = brute_stats(g);
            if (g.d_max != brute.d_max || g.edge_count != brute.edge_count)
                return "n=" + std::to_string(p.n) + " r=" + std::to_string(p.r) +
                       " s=" + std::to_string(p.s) + ": fast/brute stats differ";
        }
        return std::nullopt;
    }});

    props.push_back({"triangle-identities", [=]() -> std::optional<std::string> {
        std::vector<PackingParams> instances = {{1, 1, 8}, {2, 1, 2}, {2, 1, 8}, {3, 1, 4}};
        if (full) instances.push_back({2, 2, 30});
        for (const auto& p : instances) {
            const auto g = build_graph(p, {}, threads);
            const auto per_vertex = neighborhood_edge_counts(g);
            std::uint64_t wedge_sum = 0, t = 0;
            for (const auto e : per_vertex) {
                wedge_sum += e;
                t = std::max(t, e);
            }
            const std::uint64_t triangles = triangle_count(g);
            if (wedge_sum != 3 * triangles)
                return "n=" + std::to_string(p.n) + " s=" + std::to_string(p.s) +
                       ": 3T != sum e(N(v))";
            if (3 * triangles > g.vertex_count() * t)
                return "n=" + std::to_string(p.n) + " s=" + std::to_string(p.s) +
                       ": T > |V| t / 3";
            const auto brute = brute_stats(g);
            if (brute.triangle_count != triangles || brute.neighborhood_edge_max != t)
                return "n=" + std::to_string(p.n) + " s=" + std::to_string(p.s) +
                       ": fast/brute triangle stats differ";
        }
        return std::nullopt;
    }});

    props.push_back({"t-bound", [=]() -> std::optional<std::string> {
        const std::int64_t r_hi = full ? 4 : 2;
        for (int n = 1; n <= 3; ++n)
            for (std::int64_t r = 1; r <= r_hi; ++r) {
                const PackingParams p{n, r, 2, false};
                const auto h = build_neighborhood_graph(p, {}, threads);
                const auto bound =
                    t_upper_generic_log2({n, static_cast<double>(r), 2.0});
                const double measured = static_cast<double>(h.edge_count);
                if (measured > 0 && std::log2(measured) > bound.log2_value)
                    return "n=" + std::to_string(n) + " r=" + std::to_string(r) +
                           ": t bound below measured t";
            }
        return std::nullopt;
    }});

    props.push_back({"shell-bound", [=]() -> std::optional<std::string> {
        for (int n = 1; n <= 3; ++n)
            for (std::int64_t r = 1; r <= 3; ++r) {
                const PackingParams p{n, r, 2, false};
                const auto profile = shell_profile(p);
                const auto h = build_neighborhood_graph(p);
                if (profile.total() != h.vertex_count())
                    return "n=" + std::to_string(n) + " r=" + std::to_string(r) +
                           ": shell total != |V(H)|";
                const double log2_v = log2_unit_ball_volume(n);
                for (std::size_t k = 1; k < profile.counts.size(); ++k) {
                    if (profile.counts[k] == 0) continue;
                    const double bound =
                        log2_v + n * std::log2(std::sqrt(static_cast<double>(k)) +
                                               0.5 * std::sqrt(static_cast<double>(n)));
                    if (std::log2(static_cast<double>(profile.counts[k])) > bound)
                        return "n=" + std::to_string(n) + " r=" + std::to_string(r) +
                               " k=" + std::to_string(k) + ": shell bound violated";
                }
            }
        return std::nullopt;
    }});

    props.push_back({"independence-chain", [=]() -> std::optional<std::string> {
        const std::vector<PackingParams> instances = {
            {1, 1, 8}, {2, 1, 2}, {2, 1, 8}, {3, 1, 2}};
        for (const auto& p : instances) {
            const auto g = build_graph(p, {}, threads);
            const auto greedy = greedy_maximal_is(g);
            const auto mindeg = min_degree_greedy_is(g);
            const auto exact = exact_max_is(g);
            const std::string tag = "n=" + std::to_string(p.n) + " r=" +
                                    std::to_string(p.r) + " s=" + std::to_string(p.s);
            if (!is_independent(g, greedy.vertices) ||
                !is_independent(g, mindeg.vertices) ||
                !is_independent(g, exact.vertices))
                return tag + ": returned set not independent";
            if (exact.size() < mindeg.size() || exact.size() < greedy.size())
                return tag + ": exact below a greedy result";
            const double floor = static_cast<double>(g.vertex_count()) / (g.d_max + 1.0);
            if (static_cast<double>(greedy.size()) < floor)
                return tag + ": greedy below |V|/(d+1)";
            const auto triangles = triangle_count(g);
            const auto t = neighborhood_edge_max(g);
            if (aks_lower_bound(g.vertex_count(), g.d_max, triangles) >
                    static_cast<double>(exact.size()) + 1e-9 ||
                jv_lower_bound(g.vertex_count(), g.d_max, t) >
                    static_cast<double>(exact.size()) + 1e-9)
                return tag + ": clamped bound above exact alpha";
        }
        return std::nullopt;
    }});

    props.push_back({"packing-density", [=]() -> std::optional<std::string> {
        {
            const PackingParams p{2, 1, 8};
            const auto g = build_graph(p, {}, threads);
            const auto pk = assemble(p, greedy_maximal_is(g), g);
            if (pk.count() != 25) return "n=2 r=1 s=8: expected 25 centers";
            const double density = static_cast<double>(pk.density());
            if (std::abs(density - std::acos(-1.0) / 4.0) > 1e-12)
                return "n=2 r=1 s=8: density != pi/4";
            const auto est = mc_packing_density(pk, mc_samples, seed ^ 0x9E3779B9ULL,
                                                threads);
            if (std::abs(est.mean - density) > 3.0 * est.std_error)
                return "n=2 r=1 s=8: MC density outside 3 sigma";
        }
        {
            const PackingParams p{1, 1, 8};
            const auto g = build_graph(p, {}, threads);
            const auto pk = assemble(p, greedy_maximal_is(g), g);
            if (std::abs(static_cast<double>(pk.density()) - 1.0) > 1e-15)
                return "n=1 r=1 s=8: density != 1";
        }
        return std::nullopt;
    }});

    props.push_back({"export-roundtrip", [=]() -> std::optional<std::string> {
        const PackingParams p{2, 1, 8};
        const auto g = build_graph(p, {}, threads);
        const auto pk = assemble(p, greedy_maximal_is(g), g);
        const auto text = export_packing_string(pk);
        const auto back = import_packing_string(text);
        if (back.params != pk.params || back.centers != pk.centers)
            return "round trip changed the packing";
        return std::nullopt;
    }});

    return props;
}

}  // namespace

int cmd_check(const RunConfig& cfg) {
    if (cfg.grid != "small" && cfg.grid != "full") {
        std::cerr << "error: --grid must be small or full\n";
        return 1;
    }
    int failures = 0;
    for (const auto& prop : make_properties(cfg)) {
        std::optional<std::string> culprit;
        try {
            culprit = prop.run();
        } catch (const std::exception& e) {
            culprit = std::string("exception: ") + e.what();
        }
        if (culprit) {
            std::cout << "FAIL " << prop.name << ": " << *culprit << '\n';
            ++failures;
        } else {
            std::cout << "PASS " << prop.name << '\n';
        }
    }
    std::cout << (failures == 0 ? "all properties passed" :
                  std::to_string(failures) + " properties failed") << '\n';
    return failures == 0 ? 0 : 3;
}

}  // namespace pforge::cli
