#include "pforge/independence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace pforge {

namespace {

// Fixed-width bitset rows for the branch-and-bound core.
class BitMatrix {
public:
    BitMatrix(std::size_t rows, std::size_t cols)
        : cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

    void set(std::size_t r, std::size_t c) { row(r)[c >> 6] |= 1ULL << (c & 63); }
    bool test(std::size_t r, std::size_t c) const {
        return (row(r)[c >> 6] >> (c & 63)) & 1ULL;
    }
    std::uint64_t* row(std::size_t r) { return bits_.data() + r * words_; }
    const std::uint64_t* row(std::size_t r) const { return bits_.data() + r * words_; }
    std::size_t words() const { return words_; }

private:
    std::size_t cols_;
    std::size_t words_;
    std::vector<std::uint64_t> bits_;
};

struct BnbState {
    std::size_t count = 0;
    std::size_t words = 0;
    const BitMatrix* comp = nullptr;  // complement adjacency
    std::uint64_t nodes = 0;
    std::uint64_t node_budget = 0;
    std::vector<std::uint32_t> current;
    std::vector<std::uint32_t> best;
};

int popcount_words(const std::uint64_t* w, std::size_t words) {
    int c = 0;
    for (std::size_t i = 0; i < words; ++i) c += std::popcount(w[i]);
    return c;
}

// Tomita-style expansion: greedy color classes of the candidate set in the
// complement graph give the pruning bound.
void bnb_expand(BnbState& st, std::vector<std::uint64_t>& cand) {
    if (++st.nodes > st.node_budget)
        throw BudgetExceeded("exact_max_is: branch node budget exhausted",
                             static_cast<double>(st.node_budget));

    std::vector<std::uint32_t> order;
    std::vector<int> color_of;
    {
        // Color candidates greedily; vertices listed by ascending color.
        std::vector<std::uint64_t> uncolored = cand;
        int color = 0;
        while (popcount_words(uncolored.data(), st.words) > 0) {
            ++color;
            std::vector<std::uint64_t> cls = uncolored;
            for (std::size_t w = 0; w < st.words; ++w) {
                while (cls[w]) {
                    const auto b = static_cast<std::uint32_t>(std::countr_zero(cls[w]));
                    const std::uint32_t v = static_cast<std::uint32_t>(w * 64 + b);
                    order.push_back(v);
                    color_of.push_back(color);
                    uncolored[v >> 6] &= ~(1ULL << (v & 63));
                    // Remove v and its complement-neighbors from the class.
                    const std::uint64_t* nb = st.comp->row(v);
                    for (std::size_t k = 0; k < st.words; ++k) cls[k] &= ~nb[k];
                    cls[v >> 6] &= ~(1ULL << (v & 63));
                }
            }
        }
    }

    std::vector<std::uint64_t> sub(st.words);
    for (std::size_t idx = order.size(); idx-- > 0;) {
        if (st.current.size() + static_cast<std::size_t>(color_of[idx]) <= st.best.size())
            return;  // no candidate from here on can beat the incumbent
        const std::uint32_t v = order[idx];
        cand[v >> 6] &= ~(1ULL << (v & 63));

        st.current.push_back(v);
        const std::uint64_t* nb = st.comp->row(v);
        bool empty = true;
        for (std::size_t w = 0; w < st.words; ++w) {
            sub[w] = cand[w] & nb[w];
            empty &= sub[w] == 0;
        }
        if (empty) {
            if (st.current.size() > st.best.size()) st.best = st.current;
        } else {
            std::vector<std::uint64_t> sub_copy = sub;
            bnb_expand(st, sub_copy);
        }
        st.current.pop_back();
    }
}

}  // namespace

std::string to_string(IsAlgorithm a) {
    switch (a) {
        case IsAlgorithm::lex_greedy: return "lex-greedy";
        case IsAlgorithm::min_degree_greedy: return "min-degree";
        case IsAlgorithm::exact: return "exact";
    }
    return "?";
}

bool is_independent(const LatticeGraph& g, std::span<const std::uint32_t> vertices) {
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (std::size_t j = i + 1; j < vertices.size(); ++j)
            if (g.adjacent(vertices[i], vertices[j])) return false;
    return true;
}

bool is_maximal_independent(const LatticeGraph& g,
                            std::span<const std::uint32_t> vertices) {
    if (!is_independent(g, vertices)) return false;
    std::vector<bool> in_set(g.vertex_count(), false);
    for (const auto v : vertices) in_set[v] = true;
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        if (in_set[u]) continue;
        bool dominated = false;
        for (const auto v : g.neighbors(u))
            if (in_set[v]) {
                dominated = true;
                break;
            }
        if (!dominated) return false;
    }
    return true;
}

IndependentSet greedy_maximal_is(const LatticeGraph& g) {
    const std::size_t count = g.vertex_count();
    std::vector<bool> blocked(count, false);
    IndependentSet result;
    result.algorithm = IsAlgorithm::lex_greedy;
    for (std::size_t u = 0; u < count; ++u) {
        if (blocked[u]) continue;
        result.vertices.push_back(static_cast<std::uint32_t>(u));
        for (const auto v : g.neighbors(u)) blocked[v] = true;
    }
    result.is_maximal = true;
    return result;
}

IndependentSet min_degree_greedy_is(const LatticeGraph& g) {
    const std::size_t count = g.vertex_count();
    std::vector<std::uint32_t> deg(count);
    std::vector<bool> alive(count, true);
    using Entry = std::pair<std::uint32_t, std::uint32_t>;  // (degree, vertex)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
    for (std::size_t u = 0; u < count; ++u) {
        deg[u] = g.degree(u);
        queue.emplace(deg[u], static_cast<std::uint32_t>(u));
    }

    IndependentSet result;
    result.algorithm = IsAlgorithm::min_degree_greedy;
    while (!queue.empty()) {
        const auto [d, u] = queue.top();
        queue.pop();
        if (!alive[u] || d != deg[u]) continue;  // stale entry

        result.vertices.push_back(u);
        alive[u] = false;
        for (const auto v : g.neighbors(u)) {
            if (!alive[v]) continue;
            alive[v] = false;
            for (const auto w : g.neighbors(v)) {
                if (!alive[w]) continue;
                --deg[w];
                queue.emplace(deg[w], w);
            }
        }
    }
    std::sort(result.vertices.begin(), result.vertices.end());
    result.is_maximal = true;
    return result;
}

IndependentSet exact_max_is(const LatticeGraph& g, std::uint64_t node_budget) {
    const std::size_t count = g.vertex_count();
    if (count > 8192)
        throw BudgetExceeded("exact_max_is: instance too large for the exact solver",
                             static_cast<double>(count));

    IndependentSet result;
    result.algorithm = IsAlgorithm::exact;
    result.is_maximal = true;
    if (count == 0) return result;

    // Degeneracy order of the complement (peel minimum complement-degree,
    // ties to the lowest index); searching in that order keeps candidate
    // sets small near the root.
    std::vector<std::uint32_t> order(count);
    {
        std::vector<std::uint32_t> cdeg(count);
        std::vector<bool> removed(count, false);
        for (std::size_t u = 0; u < count; ++u)
            cdeg[u] = static_cast<std::uint32_t>(count - 1 - g.degree(u));
        for (std::size_t step = 0; step < count; ++step) {
            std::size_t pick = count;
            for (std::size_t u = 0; u < count; ++u)
                if (!removed[u] && (pick == count || cdeg[u] < cdeg[pick])) pick = u;
            order[step] = static_cast<std::uint32_t>(pick);
            removed[pick] = true;
            for (std::size_t v = 0; v < count; ++v)
                if (!removed[v] && v != pick && !g.adjacent(static_cast<std::uint32_t>(pick),
                                                            static_cast<std::uint32_t>(v)))
                    --cdeg[v];
        }
    }
    std::vector<std::uint32_t> pos(count);
    for (std::size_t i = 0; i < count; ++i) pos[order[i]] = static_cast<std::uint32_t>(i);

    // Complement adjacency in search positions.
    BitMatrix comp(count, count);
    for (std::uint32_t u = 0; u < count; ++u)
        for (std::uint32_t v = 0; v < count; ++v)
            if (u != v && !g.adjacent(order[u], order[v])) comp.set(u, v);

    BnbState st;
    st.count = count;
    st.words = comp.words();
    st.comp = &comp;
    st.node_budget = node_budget;
    // Warm start from the min-degree greedy incumbent.
    for (const auto v : min_degree_greedy_is(g).vertices) st.best.push_back(pos[v]);

    std::vector<std::uint64_t> cand(st.words, 0);
    for (std::size_t u = 0; u < count; ++u) cand[u >> 6] |= 1ULL << (u & 63);
    bnb_expand(st, cand);

    result.vertices.reserve(st.best.size());
    for (const auto p : st.best) result.vertices.push_back(order[p]);
    std::sort(result.vertices.begin(), result.vertices.end());
    return result;
}

namespace {

double clamped_bound(double vertex_count, double d, double ratio) {
    const double trivial = vertex_count / (d + 1.0);
    if (d < 1.0) return trivial;
    const double term = vertex_count / (10.0 * d) *
                        (std::log2(d) - 0.5 * std::log2(std::max(ratio, 1.0)));
    return std::max(term, trivial);
}

}  // namespace

double aks_lower_bound(std::uint64_t vertex_count, std::uint64_t d_max,
                       std::uint64_t triangles) {
    if (vertex_count == 0) return 0.0;
    const double v = static_cast<double>(vertex_count);
    return clamped_bound(v, static_cast<double>(d_max),
                         static_cast<double>(triangles) / v);
}

double jv_lower_bound(std::uint64_t vertex_count, std::uint64_t d_max,
                      std::uint64_t neighborhood_edge_max) {
    if (vertex_count == 0) return 0.0;
    return clamped_bound(static_cast<double>(vertex_count),
                         static_cast<double>(d_max),
                         static_cast<double>(neighborhood_edge_max) / 3.0);
}

}  // namespace pforge
