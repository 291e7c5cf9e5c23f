#pragma once

#include <cstdint>

#include "pforge/lattice_graph.hpp"
#include "pforge/packing.hpp"

namespace pforge {

// Monte Carlo estimate with its binomial standard error.  Bit-identical
// for fixed (seed, samples, shards) at any thread count: shard i draws
// from SplitMix64(seed ^ i) and integer hit counts merge in shard order.
struct McEstimate {
    double mean = 0;
    double std_error = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

inline constexpr unsigned kMcShards = 16;

// Volume of the intersection of two radius-rho balls with centers
// 2*rho*delta apart: rejection-sample the first ball, test membership in
// the second, scale by V_n rho^n.  Requires 2 <= n <= 8, samples >= 1000.
McEstimate mc_ball_intersection(int n, double rho, double delta,
                                std::uint64_t samples, std::uint64_t seed,
                                unsigned threads = 1, unsigned shards = kMcShards);

// Covered fraction of the outer cube of side s + 2r: uniform samples,
// hit iff strictly inside any sphere.  Requires n <= 4, samples >= 1000.
McEstimate mc_packing_density(const Packing& pk, std::uint64_t samples,
                              std::uint64_t seed, unsigned threads = 1,
                              unsigned shards = kMcShards);

// Quadratic/cubic reference statistics recomputed from vertex coordinates
// with a dense bit-matrix, independent of the graph's stored adjacency.
// Requires |V| <= 5000 (BudgetExceeded above).
struct BruteStats {
    std::uint32_t d_max = 0;
    std::uint64_t edge_count = 0;
    std::uint64_t triangle_count = 0;
    std::uint64_t neighborhood_edge_max = 0;
};

BruteStats brute_stats(const LatticeGraph& g);

}  // namespace pforge
