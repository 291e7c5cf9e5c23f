#include <cmath>

#include "doctest.h"
#include "pforge/geometry.hpp"
#include "pforge/oracle.hpp"
#include "pforge/rng.hpp"

using namespace pforge;

TEST_CASE("splitmix64: fixed constants give a reproducible stream") {
    SplitMix64 a(0);
    // Reference values for seed 0 (first outputs of the standard splitmix64).
    CHECK(a.next() == 0xE220A8397B1DCDAFULL);
    CHECK(a.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(a.next() == 0x06C45D188009454FULL);

    SplitMix64 b(42), c(42);
    for (int i = 0; i < 100; ++i) CHECK(b.next() == c.next());
    const double d = SplitMix64(7).next_double();
    CHECK(d >= 0.0);
    CHECK(d < 1.0);
}

TEST_CASE("mc_ball_intersection: bit-identical across thread counts") {
    const auto a = mc_ball_intersection(3, 1.0, 0.3, 50'000, 123, 1);
    const auto b = mc_ball_intersection(3, 1.0, 0.3, 50'000, 123, 4);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    const auto c = mc_ball_intersection(3, 1.0, 0.3, 50'000, 124, 1);
    CHECK(a.mean != c.mean);
}

TEST_CASE("mc_ball_intersection: agrees with the exact lens at n=2") {
    const auto est = mc_ball_intersection(2, 1.0, 0.5, 200'000, 2024);
    const double exact = intersection_volume_exact(CapGeometry::make(2, 1.0, 0.5));
    CHECK(std::abs(est.mean - exact) <= 3.0 * est.std_error);
    CHECK(est.std_error > 0);
    CHECK(est.samples == 200'000);
}

TEST_CASE("mc_ball_intersection: nearly disjoint and nearly coincident limits") {
    const auto far = mc_ball_intersection(2, 1.0, 0.999, 100'000, 7);
    CHECK(far.mean < 0.01 * unit_ball_volume(2));

    const auto near = mc_ball_intersection(3, 1.0, 1e-3, 100'000, 7);
    const double exact = intersection_volume_exact(CapGeometry::make(3, 1.0, 1e-3));
    CHECK(std::abs(near.mean - exact) <= 3.0 * near.std_error);
    CHECK(std::abs(exact - unit_ball_volume(3)) < 0.01);
}

TEST_CASE("mc_ball_intersection: preconditions") {
    CHECK_THROWS_AS(mc_ball_intersection(9, 1.0, 0.5, 10'000, 1), std::invalid_argument);
    CHECK_THROWS_AS(mc_ball_intersection(1, 1.0, 0.5, 10'000, 1), std::invalid_argument);
    CHECK_THROWS_AS(mc_ball_intersection(3, 1.0, 0.5, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(mc_ball_intersection(3, 1.0, 1.5, 10'000, 1), std::invalid_argument);
}

TEST_CASE("mc_packing_density: empty packing is exactly zero") {
    Packing pk;
    pk.params = {2, 1, 8};
    const auto est = mc_packing_density(pk, 10'000, 5);
    CHECK(est.mean == 0.0);
    CHECK(est.std_error == 0.0);
}

TEST_CASE("mc_packing_density: single unit sphere in a side-10 box") {
    Packing pk;
    pk.params = {2, 1, 8};
    pk.centers = {0, 0};
    const auto est = mc_packing_density(pk, 200'000, 11);
    const double exact = std::acos(-1.0) / 100.0;
    CHECK(std::abs(est.mean - exact) <= 3.0 * est.std_error);
}

TEST_CASE("mc_packing_density: deterministic across thread counts") {
    Packing pk;
    pk.params = {2, 1, 8};
    pk.centers = {0, 0, 2, 2, -4, 4};
    const auto a = mc_packing_density(pk, 50'000, 99, 1);
    const auto b = mc_packing_density(pk, 50'000, 99, 4);
    CHECK(a.mean == b.mean);
    CHECK_THROWS_AS(mc_packing_density(pk, 10, 1), std::invalid_argument);
}

TEST_CASE("brute_stats: frozen instances") {
    const auto path = brute_stats(build_graph({1, 1, 8}));
    CHECK(path.d_max == 2);
    CHECK(path.edge_count == 8);
    CHECK(path.triangle_count == 0);
    CHECK(path.neighborhood_edge_max == 0);

    const auto single = brute_stats(build_graph({2, 1, 0}));
    CHECK(single.d_max == 0);
    CHECK(single.edge_count == 0);
    CHECK(single.triangle_count == 0);
    CHECK(single.neighborhood_edge_max == 0);

    const auto king3 = build_graph({2, 1, 2});
    const auto stats = brute_stats(king3);
    CHECK(stats.d_max == king3.d_max);
    CHECK(stats.edge_count == king3.edge_count);
    CHECK(stats.triangle_count == triangle_count(king3));
    CHECK(stats.triangle_count == 16);
    CHECK(stats.neighborhood_edge_max == neighborhood_edge_max(king3));
    CHECK(stats.neighborhood_edge_max == 12);
}

TEST_CASE("brute_stats: fast path equals brute force on larger instances") {
    for (const auto& p : {PackingParams{2, 2, 20}, PackingParams{3, 1, 8}}) {
        const auto g = build_graph(p);
        const auto stats = brute_stats(g);
        CHECK(stats.d_max == g.d_max);
        CHECK(stats.edge_count == g.edge_count);
        CHECK(stats.triangle_count == triangle_count(g));
        CHECK(stats.neighborhood_edge_max == neighborhood_edge_max(g));
    }
}

TEST_CASE("brute_stats: refuses oversized instances") {
    const auto g = build_graph({2, 1, 140});  // 141^2 = 19881 vertices
    CHECK_THROWS_AS(brute_stats(g), BudgetExceeded);
}
