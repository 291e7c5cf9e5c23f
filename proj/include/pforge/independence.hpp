#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "pforge/lattice_graph.hpp"

namespace pforge {

enum class IsAlgorithm { lex_greedy, min_degree_greedy, exact };

std::string to_string(IsAlgorithm a);

struct IndependentSet {
    std::vector<std::uint32_t> vertices;  // sorted indices into the graph
    bool is_maximal = false;
    IsAlgorithm algorithm = IsAlgorithm::lex_greedy;

    std::size_t size() const { return vertices.size(); }
};

// True iff no two listed vertices are adjacent.
bool is_independent(const LatticeGraph& g, std::span<const std::uint32_t> vertices);

// True iff additionally every unlisted vertex has a listed neighbor.
bool is_maximal_independent(const LatticeGraph& g, std::span<const std::uint32_t> vertices);

// Single lexicographic sweep: take a vertex unless an earlier taken vertex
// is adjacent.  Maximal, size >= |V| / (d_max + 1).
IndependentSet greedy_maximal_is(const LatticeGraph& g);

// Repeatedly take a vertex of minimum current degree (ties: lowest index)
// and delete its closed neighborhood.  Maximal and deterministic.
IndependentSet min_degree_greedy_is(const LatticeGraph& g);

// Maximum independent set by branch and bound on the complement graph
// (greedy clique-cover bound, degeneracy seed order).  Exact when it
// returns; throws BudgetExceeded past node_budget branch nodes.
IndependentSet exact_max_is(const LatticeGraph& g, std::uint64_t node_budget = 10'000'000);

// Triangle-aware independence lower bound
//   (|V| / 10d) * (log2 d - 0.5 * log2(T / |V|)),
// with the ratio clamped below at 1 and the result floored by the trivial
// bound |V| / (d + 1).  The clamp only lowers the bound, so the returned
// value is always a true lower bound on alpha.
double aks_lower_bound(std::uint64_t vertex_count, std::uint64_t d_max,
                       std::uint64_t triangles);

// Same shape with the per-neighborhood edge bound t in place of T/|V|:
//   (|V| / 10d) * (log2 d - 0.5 * log2(t / 3)),
// identical clamp and floor policy.
double jv_lower_bound(std::uint64_t vertex_count, std::uint64_t d_max,
                      std::uint64_t neighborhood_edge_max);

}  // namespace pforge
