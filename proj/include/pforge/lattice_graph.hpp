#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "pforge/params.hpp"

namespace pforge {

enum class VertexDomain {
    cube,            // Z^n intersected with the cube |x_i| <= s/2
    punctured_ball,  // (Z^n \ {0}) intersected with the open ball of radius 2r
};

// Geometric graph on integer points: {u,v} is an edge iff the squared
// Euclidean distance is <= 4r^2 - 1 (integer form of d(u,v) < 2r).
// Vertices are stored in lexicographic coordinate order; adjacency is CSR
// with sorted neighbor lists.  Immutable once built.
struct LatticeGraph {
    PackingParams params;
    VertexDomain domain = VertexDomain::cube;

    std::vector<std::int32_t> coords;       // vertex_count * n
    std::vector<std::uint64_t> adj_offsets; // vertex_count + 1
    std::vector<std::uint32_t> adj;         // 2 * edge_count, sorted per vertex

    std::uint32_t d_max = 0;
    std::uint64_t edge_count = 0;
    // Pair comparisons spent during construction (work accounting).
    std::uint64_t comparisons = 0;

    std::size_t vertex_count() const { return adj_offsets.empty() ? 0 : adj_offsets.size() - 1; }

    std::span<const std::int32_t> vertex(std::size_t i) const {
        return {coords.data() + i * static_cast<std::size_t>(params.n),
                static_cast<std::size_t>(params.n)};
    }

    std::span<const std::uint32_t> neighbors(std::size_t i) const {
        return {adj.data() + adj_offsets[i], adj.data() + adj_offsets[i + 1]};
    }

    std::uint32_t degree(std::size_t i) const {
        return static_cast<std::uint32_t>(adj_offsets[i + 1] - adj_offsets[i]);
    }

    bool adjacent(std::uint32_t u, std::uint32_t v) const;

    // Debug dump: `v <index> <coords...>` lines then `e <i> <j>` lines
    // (i < j), both in lexicographic order.
    void dump(std::ostream& os) const;
};

// Squared-distance histogram of the punctured ball: counts[k] is the
// number of integer points at squared distance exactly k from the origin,
// for k = 1 .. 4r^2 - 1.
struct ShellProfile {
    std::int64_t r = 0;
    std::vector<std::uint64_t> counts;  // size 4r^2, index 0 unused

    std::uint64_t total() const;
};

// Z^n in the cube of side s (s even, >= 0): exactly (s+1)^n points in
// lexicographic order, as a flat coordinate array.
std::vector<std::int32_t> enumerate_cube_points(int n, std::int64_t s,
                                                const Budget& budget = {});

// Number of integer points with squared norm <= 4r^2 - 1 (equals
// d_max + 1 of any graph whose cube is large enough).
std::uint64_t count_ball_lattice_points(int n, std::int64_t r,
                                        const Budget& budget = {});

// The graph G on the cube points.  Uses a cell list with bucket side 2r
// and a 3^n-neighborhood scan; falls back to all-pairs when the bucket
// grid is too coarse for that to pay off.  Identical output at any
// thread count.
LatticeGraph build_graph(const PackingParams& p, const Budget& budget = {},
                         unsigned threads = 1);

// The graph H induced by the ideal neighborhood of the origin,
// (Z^n \ {0}) within distance < 2r.  Independent of s; its edge count is
// the neighborhood edge bound t of any large-enough cube graph.
LatticeGraph build_neighborhood_graph(const PackingParams& p,
                                      const Budget& budget = {},
                                      unsigned threads = 1);

ShellProfile shell_profile(const PackingParams& p, const Budget& budget = {});

// Number of 3-cliques (sorted-list intersection over edges).
std::uint64_t triangle_count(const LatticeGraph& g);

// Edges induced inside the neighborhood of each vertex; their sum is
// 3 * triangle_count.
std::vector<std::uint64_t> neighborhood_edge_counts(const LatticeGraph& g);

// max_v e(N(v)): the local sparsity statistic t.
std::uint64_t neighborhood_edge_max(const LatticeGraph& g);

}  // namespace pforge
