#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "pforge/geometry.hpp"
#include "pforge/lattice_graph.hpp"
#include "pforge/rng.hpp"

using namespace pforge;

namespace {

// Instances small enough for the all-pairs oracle.
const std::vector<PackingParams> kOracleInstances = {
    {1, 1, 8}, {1, 2, 12}, {1, 3, 30}, {2, 1, 2}, {2, 1, 8},
    {2, 2, 8}, {2, 3, 14}, {2, 2, 40}, {3, 1, 4}, {3, 2, 8},
};

}  // namespace

TEST_CASE("enumerate_cube_points: counts and lexicographic order") {
    const auto p2 = enumerate_cube_points(2, 2);
    REQUIRE(p2.size() == 9 * 2);
    std::set<std::pair<int, int>> pts;
    for (std::size_t i = 0; i < 9; ++i) pts.insert({p2[2 * i], p2[2 * i + 1]});
    CHECK(pts.size() == 9);
    for (const auto& [x, y] : pts) {
        CHECK(std::abs(x) <= 1);
        CHECK(std::abs(y) <= 1);
    }
    CHECK(p2[0] == -1);  // first point (-1,-1)
    CHECK(p2[1] == -1);
    CHECK(p2[16] == 1);  // last point (1,1)
    CHECK(p2[17] == 1);

    CHECK(enumerate_cube_points(1, 8).size() == 9);
    CHECK(enumerate_cube_points(3, 4).size() == 125 * 3);

    // lexicographic order
    const auto p3 = enumerate_cube_points(3, 2);
    for (std::size_t i = 0; i + 1 < p3.size() / 3; ++i) {
        const auto a = std::vector<int>{p3[3 * i], p3[3 * i + 1], p3[3 * i + 2]};
        const auto b =
            std::vector<int>{p3[3 * i + 3], p3[3 * i + 4], p3[3 * i + 5]};
        CHECK(a < b);
    }
}

TEST_CASE("enumerate_cube_points: budget and validation") {
    CHECK_THROWS_AS(enumerate_cube_points(10, 30), BudgetExceeded);
    try {
        enumerate_cube_points(10, 30);
    } catch (const BudgetExceeded& e) {
        CHECK(e.predicted() == doctest::Approx(std::pow(31.0, 10)).epsilon(1e-9));
    }
    CHECK_THROWS_AS(enumerate_cube_points(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_cube_points(0, 2), std::invalid_argument);
}

TEST_CASE("params validation") {
    CHECK_THROWS_AS((PackingParams{0, 1, 2}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((PackingParams{1, 0, 2}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((PackingParams{1, 1, -2}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((PackingParams{1, 1, 3}).validate(), std::invalid_argument);
    CHECK_THROWS_AS((PackingParams{1, 1, 2, true}).validate(), std::invalid_argument);
    CHECK_NOTHROW((PackingParams{1, 2, 2, true}).validate());
    CHECK_NOTHROW((PackingParams{1, 1, 0}).validate());
}

TEST_CASE("build_graph: 1-d path") {
    const auto g = build_graph({1, 1, 8});
    CHECK(g.vertex_count() == 9);
    CHECK(g.edge_count == 8);
    CHECK(g.d_max == 2);
    CHECK(g.vertex(0)[0] == -4);
    CHECK(g.vertex(8)[0] == 4);
    CHECK(g.adjacent(0, 1));
    CHECK_FALSE(g.adjacent(0, 2));
}

TEST_CASE("build_graph: 9x9 king graph") {
    const auto g = build_graph({2, 1, 8});
    CHECK(g.vertex_count() == 81);
    CHECK(g.edge_count == 272);
    CHECK(g.d_max == 8);
    // interior vertex (0,0) has the full king neighborhood
    const std::size_t center = 40;  // lexicographic middle of 81
    CHECK(g.vertex(center)[0] == 0);
    CHECK(g.vertex(center)[1] == 0);
    CHECK(g.degree(center) == 8);
}

TEST_CASE("build_graph: single point at s=0") {
    const auto g = build_graph({2, 1, 0});
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count == 0);
    CHECK(g.d_max == 0);
}

TEST_CASE("build_graph: equals all-pairs oracle on every instance") {
    for (const auto& p : kOracleInstances) {
        const auto g = build_graph(p);
        const auto oracle = pforge::testing::brute_adjacency(g);
        REQUIRE(g.vertex_count() == oracle.size());
        for (std::size_t u = 0; u < oracle.size(); ++u) {
            auto want = oracle[u];
            std::sort(want.begin(), want.end());
            const auto got = g.neighbors(u);
            REQUIRE(static_cast<std::size_t>(got.size()) == want.size());
            for (std::size_t i = 0; i < want.size(); ++i) CHECK(got[i] == want[i]);
        }
    }
}

TEST_CASE("build_graph: thread count does not change the graph") {
    for (const auto& p : {PackingParams{2, 2, 8}, PackingParams{3, 1, 4}}) {
        const auto a = build_graph(p, {}, 1);
        const auto b = build_graph(p, {}, 4);
        CHECK(a.adj == b.adj);
        CHECK(a.adj_offsets == b.adj_offsets);
        CHECK(a.comparisons == b.comparisons);
    }
}

TEST_CASE("edge rule: random pairs match integer squared distance") {
    SplitMix64 rng(42);
    for (const auto& p : kOracleInstances) {
        const auto g = build_graph(p);
        const std::int64_t limit = 4 * p.r * p.r - 1;
        for (int trial = 0; trial < 1000; ++trial) {
            const auto u = static_cast<std::uint32_t>(rng.next() % g.vertex_count());
            const auto v = static_cast<std::uint32_t>(rng.next() % g.vertex_count());
            if (u == v) continue;
            std::int64_t d2 = 0;
            for (int i = 0; i < p.n; ++i) {
                const std::int64_t d =
                    static_cast<std::int64_t>(g.vertex(u)[i]) - g.vertex(v)[i];
                d2 += d * d;
            }
            CHECK(g.adjacent(u, v) == (d2 <= limit));
        }
    }
}

TEST_CASE("degree bound: d_max + 1 <= V_n rho^n on every instance") {
    for (const auto& p : kOracleInstances) {
        const auto g = build_graph(p);
        CHECK(static_cast<double>(g.d_max) + 1.0 <= d_n_upper(p));
    }
}

TEST_CASE("build_graph: comparison budget refusal") {
    Budget tiny;
    tiny.max_pair_comparisons = 10;
    CHECK_THROWS_AS(build_graph({2, 1, 8}, tiny), BudgetExceeded);
}

TEST_CASE("count_ball_lattice_points: frozen values and brute oracle") {
    CHECK(count_ball_lattice_points(2, 2) == 45);
    CHECK(count_ball_lattice_points(1, 1) == 3);
    CHECK(count_ball_lattice_points(2, 1) == 9);
    CHECK(count_ball_lattice_points(3, 1) == 27);

    // brute cube-scan oracle
    for (int n = 1; n <= 3; ++n)
        for (std::int64_t r = 1; r <= 4; ++r) {
            const std::int64_t limit = 4 * r * r - 1;
            const std::int64_t lo = -(2 * r - 1), hi = 2 * r - 1;
            std::uint64_t brute = 0;
            std::vector<std::int64_t> v(n, lo);
            for (;;) {
                std::int64_t d2 = 0;
                for (const auto c : v) d2 += c * c;
                if (d2 <= limit) ++brute;
                int axis = n - 1;
                while (axis >= 0 && v[axis] == hi) v[axis--] = lo;
                if (axis < 0) break;
                ++v[axis];
            }
            CHECK(count_ball_lattice_points(n, r) == brute);
        }

    Budget tiny;
    tiny.max_vertices = 10;
    CHECK_THROWS_AS(count_ball_lattice_points(3, 8, tiny), BudgetExceeded);
    // the cap aborts long before enumerating an astronomically large ball
    CHECK_THROWS_AS(count_ball_lattice_points(2, 50'000'000, tiny), BudgetExceeded);
}

TEST_CASE("triangle_count: frozen values") {
    CHECK(triangle_count(build_graph({1, 1, 8})) == 0);
    CHECK(triangle_count(build_graph({2, 1, 0})) == 0);
    const auto king3 = build_graph({2, 1, 2});
    CHECK(triangle_count(king3) == 16);
    CHECK(pforge::testing::brute_triangles(king3) == 16);
    const auto king9 = build_graph({2, 1, 8});
    CHECK(triangle_count(king9) == 256);
    CHECK(pforge::testing::brute_triangles(king9) == 256);
}

TEST_CASE("triangle identities: 3T = sum e(N(v)) and T <= |V| t / 3") {
    for (const auto& p : kOracleInstances) {
        const auto g = build_graph(p);
        const auto per_vertex = neighborhood_edge_counts(g);
        std::uint64_t wedge_sum = 0, t = 0;
        for (const auto e : per_vertex) {
            wedge_sum += e;
            t = std::max(t, e);
        }
        const auto triangles = triangle_count(g);
        CHECK(wedge_sum == 3 * triangles);
        const bool t_relation = 3 * triangles <= g.vertex_count() * t ||
                                (triangles == 0 && t == 0);
        CHECK(t_relation);
        CHECK(neighborhood_edge_max(g) == t);
    }
}

TEST_CASE("neighborhood_edge_max: frozen values") {
    CHECK(neighborhood_edge_max(build_graph({1, 1, 8})) == 0);
    CHECK(neighborhood_edge_max(build_graph({2, 1, 0})) == 0);
    CHECK(neighborhood_edge_max(build_graph({2, 1, 2})) == 12);
}

TEST_CASE("build_neighborhood_graph: frozen instances") {
    const auto h11 = build_neighborhood_graph({1, 1, 2});
    CHECK(h11.vertex_count() == 2);
    CHECK(h11.edge_count == 0);

    const auto h21 = build_neighborhood_graph({2, 1, 2});
    CHECK(h21.vertex_count() == 8);
    CHECK(h21.edge_count == 12);

    const auto h22 = build_neighborhood_graph({2, 2, 2});
    CHECK(h22.vertex_count() == 44);
    CHECK(h22.edge_count == 528);

    // no origin among the vertices
    for (std::size_t i = 0; i < h22.vertex_count(); ++i) {
        std::int64_t norm = 0;
        for (const auto c : h22.vertex(i)) norm += static_cast<std::int64_t>(c) * c;
        CHECK(norm >= 1);
    }
}

TEST_CASE("origin degree in a large-enough cube equals |V(H)|") {
    for (int n = 1; n <= 2; ++n)
        for (std::int64_t r = 1; r <= 2; ++r) {
            const std::int64_t s = 4 * r + 2;
            const auto g = build_graph({n, r, s});
            const auto h = build_neighborhood_graph({n, r, s});
            // origin is the lexicographic middle vertex
            const std::size_t origin = g.vertex_count() / 2;
            for (const auto c : g.vertex(origin)) REQUIRE(c == 0);
            CHECK(g.degree(origin) == h.vertex_count());
            CHECK(neighborhood_edge_max(g) == h.edge_count);
        }
}

TEST_CASE("shell profile: frozen values and invariants") {
    const auto p21 = shell_profile({2, 1, 2});
    REQUIRE(p21.counts.size() == 4);
    CHECK(p21.counts[1] == 4);
    CHECK(p21.counts[2] == 4);
    CHECK(p21.counts[3] == 0);
    CHECK(p21.total() == 8);

    const auto p11 = shell_profile({1, 1, 2});
    CHECK(p11.counts[1] == 2);
    CHECK(p11.total() == 2);

    const auto p22 = shell_profile({2, 2, 2});
    CHECK(p22.total() == 44);
    CHECK(p22.counts[3] == 0);  // 3 is not a sum of two squares

    // sum = |V(H)| and the volume bound per shell
    for (int n = 1; n <= 3; ++n)
        for (std::int64_t r = 1; r <= 3; ++r) {
            const PackingParams p{n, r, 2};
            const auto profile = shell_profile(p);
            CHECK(profile.total() == build_neighborhood_graph(p).vertex_count());
            for (std::size_t k = 1; k < profile.counts.size(); ++k) {
                if (profile.counts[k] == 0) continue;
                const double bound =
                    unit_ball_volume(n) *
                    std::pow(std::sqrt(static_cast<double>(k)) + 0.5 * std::sqrt(n), n);
                CHECK(static_cast<double>(profile.counts[k]) <= bound);
            }
        }
}

TEST_CASE("dump format") {
    const auto g = build_graph({1, 1, 4});
    std::ostringstream os;
    g.dump(os);
    CHECK(os.str() ==
          "v 0 -2\n"
          "v 1 -1\n"
          "v 2 0\n"
          "v 3 1\n"
          "v 4 2\n"
          "e 0 1\n"
          "e 1 2\n"
          "e 2 3\n"
          "e 3 4\n");
}
