#include "pforge/lattice_graph.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <string>

#include "pforge/geometry.hpp"
#include "pforge/parallel.hpp"

namespace pforge {

namespace {

// (base)^n as a long double, saturating instead of overflowing.
long double pow_count(long double base, int n) {
    long double v = 1.0L;
    for (int i = 0; i < n; ++i) {
        v *= base;
        if (v > 1e30L) return 1e30L;
    }
    return v;
}

std::int64_t isqrt_floor(std::int64_t x) {
    if (x < 0) return -1;
    auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

// Integer points of the open ball of radius 2r (squared norm <= 4r^2-1),
// in lexicographic order.  DFS over axes with per-axis range +-isqrt of
// the remaining budget.
void ball_points_rec(int axis, int n, std::int64_t remaining,
                     std::vector<std::int32_t>& prefix,
                     std::vector<std::int32_t>& out) {
    if (axis == n) {
        out.insert(out.end(), prefix.begin(), prefix.end());
        return;
    }
    const std::int64_t lim = isqrt_floor(remaining);
    for (std::int64_t v = -lim; v <= lim; ++v) {
        prefix[axis] = static_cast<std::int32_t>(v);
        ball_points_rec(axis + 1, n, remaining - v * v, prefix, out);
    }
}

// Counts ball points, aborting at the first leaf row past cap so that
// infeasible instances cost O(cap) work, not O(actual).
void ball_points_count_capped(int axis, int n, std::int64_t remaining,
                              std::uint64_t cap, std::uint64_t& total,
                              std::int64_t r, const char* op) {
    const std::int64_t lim = isqrt_floor(remaining);
    if (axis == n - 1) {
        total += static_cast<std::uint64_t>(2 * lim + 1);
        if (total > cap) {
            const double log2_points = log2_d_n_upper(n, static_cast<double>(r));
            throw BudgetExceeded(std::string(op) + ": ball point count exceeds budget",
                                 std::min(std::exp2(log2_points), 1e300));
        }
        return;
    }
    for (std::int64_t v = -lim; v <= lim; ++v)
        ball_points_count_capped(axis + 1, n, remaining - v * v, cap, total, r, op);
}

std::uint64_t count_ball_points_checked(int n, std::int64_t r,
                                        const Budget& budget, const char* op) {
    std::uint64_t total = 0;
    ball_points_count_capped(0, n, 4 * r * r - 1, budget.max_vertices, total, r, op);
    return total;
}

std::vector<std::int32_t> enumerate_ball_points(int n, std::int64_t r,
                                                const Budget& budget,
                                                bool include_origin) {
    const std::uint64_t count =
        count_ball_points_checked(n, r, budget, "enumerate_ball_points");
    std::vector<std::int32_t> prefix(n);
    std::vector<std::int32_t> coords;
    coords.reserve(static_cast<std::size_t>(count) * static_cast<std::size_t>(n));
    ball_points_rec(0, n, 4 * r * r - 1, prefix, coords);
    if (!include_origin) {
        for (std::size_t i = 0; i < count; ++i) {
            const auto* p = coords.data() + i * static_cast<std::size_t>(n);
            if (std::all_of(p, p + n, [](std::int32_t c) { return c == 0; })) {
                coords.erase(coords.begin() + i * n, coords.begin() + (i + 1) * n);
                break;
            }
        }
    }
    return coords;
}

struct CellGrid {
    int n;
    std::int64_t cell;               // bucket side, 2r
    std::vector<std::int64_t> lo;    // per-axis coordinate minimum
    std::vector<std::int64_t> dims;  // per-axis bucket count
    std::uint64_t total = 1;

    std::uint64_t bucket_of(std::span<const std::int32_t> v) const {
        std::uint64_t id = 0;
        for (int i = 0; i < n; ++i)
            id = id * static_cast<std::uint64_t>(dims[i]) +
                 static_cast<std::uint64_t>((v[i] - lo[i]) / cell);
        return id;
    }
};

// Fills per-vertex sorted neighbor lists into CSR arrays.  Two passes
// (count, fill) so nothing but the final arrays is allocated.
void build_adjacency(LatticeGraph& g, const Budget& budget, unsigned threads) {
    const std::size_t count = g.coords.size() / static_cast<std::size_t>(g.params.n);
    const int n = g.params.n;
    const std::int64_t limit = 4 * g.params.r * g.params.r - 1;

    auto sq_dist_within = [&](std::size_t u, std::size_t v) {
        const std::int32_t* a = g.coords.data() + u * n;
        const std::int32_t* b = g.coords.data() + v * n;
        std::int64_t d2 = 0;
        for (int i = 0; i < n; ++i) {
            const std::int64_t d = static_cast<std::int64_t>(a[i]) - b[i];
            d2 += d * d;
            if (d2 > limit) return std::make_pair(false, d2);
        }
        return std::make_pair(d2 <= limit, d2);
    };

    // Decide cell list vs all-pairs.
    CellGrid grid;
    grid.n = n;
    grid.cell = 2 * g.params.r;
    grid.lo.resize(n);
    grid.dims.resize(n);
    bool use_cells = count > 1;
    if (use_cells) {
        for (int i = 0; i < n; ++i) {
            std::int64_t lo = g.coords[i], hi = g.coords[i];
            for (std::size_t v = 0; v < count; ++v) {
                const std::int32_t c = g.coords[v * n + i];
                lo = std::min<std::int64_t>(lo, c);
                hi = std::max<std::int64_t>(hi, c);
            }
            grid.lo[i] = lo;
            grid.dims[i] = (hi - lo) / grid.cell + 1;
        }
        long double total = 1.0L;
        for (int i = 0; i < n; ++i) total *= static_cast<long double>(grid.dims[i]);
        // A 3^n scan only pays off when the grid is finer than that.
        if (pow_count(3.0L, n) > total || total > static_cast<long double>(count)) {
            use_cells = false;
        } else {
            grid.total = static_cast<std::uint64_t>(total);
        }
    }

    // Refuse predictably infeasible instances before doing any work.
    {
        const long double pairs = static_cast<long double>(count) * (count - 1) / 2.0L;
        long double predicted = pairs;
        if (use_cells) {
            const long double avg_bucket =
                static_cast<long double>(count) / static_cast<long double>(grid.total);
            predicted = static_cast<long double>(count) * pow_count(3.0L, n) *
                        std::max(1.0L, avg_bucket);
            predicted = std::min(predicted, pairs);
        }
        if (predicted > static_cast<long double>(budget.max_pair_comparisons))
            throw BudgetExceeded("build_graph: predicted pair comparisons exceed budget",
                                 static_cast<double>(predicted));
    }

    std::vector<std::uint32_t> bucket_items;
    std::vector<std::uint64_t> bucket_start;
    if (use_cells) {
        std::vector<std::uint32_t> bucket_of(count);
        std::vector<std::uint64_t> fill(grid.total + 1, 0);
        for (std::size_t v = 0; v < count; ++v) {
            const auto b = static_cast<std::uint32_t>(grid.bucket_of(g.vertex(v)));
            bucket_of[v] = b;
            ++fill[b + 1];
        }
        bucket_start.assign(fill.begin(), fill.end());
        for (std::size_t b = 1; b < bucket_start.size(); ++b)
            bucket_start[b] += bucket_start[b - 1];
        bucket_items.resize(count);
        std::vector<std::uint64_t> cursor(bucket_start.begin(), bucket_start.end() - 1);
        for (std::size_t v = 0; v < count; ++v)
            bucket_items[cursor[bucket_of[v]]++] = static_cast<std::uint32_t>(v);
    }

    std::atomic<std::uint64_t> comparisons{0};

    // Calls visit(v) for every candidate v != u sharing or adjoining u's
    // bucket (cell path) or for every other vertex (brute path).
    auto for_candidates = [&](std::size_t u, auto&& visit) {
        if (!use_cells) {
            for (std::size_t v = 0; v < count; ++v)
                if (v != u) visit(static_cast<std::uint32_t>(v));
            return;
        }
        thread_local std::vector<std::int64_t> base, off;
        base.assign(n, 0);
        off.assign(n, -1);
        const auto vu = g.vertex(u);
        for (int i = 0; i < n; ++i) base[i] = (vu[i] - grid.lo[i]) / grid.cell;
        for (;;) {
            bool valid = true;
            std::uint64_t id = 0;
            for (int i = 0; i < n; ++i) {
                const std::int64_t b = base[i] + off[i];
                if (b < 0 || b >= grid.dims[i]) {
                    valid = false;
                    break;
                }
                id = id * static_cast<std::uint64_t>(grid.dims[i]) +
                     static_cast<std::uint64_t>(b);
            }
            if (valid) {
                for (std::uint64_t k = bucket_start[id]; k < bucket_start[id + 1]; ++k) {
                    const std::uint32_t v = bucket_items[k];
                    if (v != u) visit(v);
                }
            }
            int axis = n - 1;
            while (axis >= 0 && off[axis] == 1) off[axis--] = -1;
            if (axis < 0) break;
            ++off[axis];
        }
    };

    g.adj_offsets.assign(count + 1, 0);
    const std::size_t chunk = std::max<std::size_t>(1, count / 256);

    parallel_chunks(count, chunk, threads, [&](std::size_t begin, std::size_t end) {
        std::uint64_t local = 0;
        for (std::size_t u = begin; u < end; ++u) {
            std::uint64_t deg = 0;
            for_candidates(u, [&](std::uint32_t v) {
                ++local;
                if (sq_dist_within(u, v).first) ++deg;
            });
            g.adj_offsets[u + 1] = deg;
        }
        comparisons.fetch_add(local, std::memory_order_relaxed);
    });

    for (std::size_t u = 0; u < count; ++u) g.adj_offsets[u + 1] += g.adj_offsets[u];
    g.adj.resize(g.adj_offsets[count]);

    parallel_chunks(count, chunk, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t u = begin; u < end; ++u) {
            std::uint64_t w = g.adj_offsets[u];
            for_candidates(u, [&](std::uint32_t v) {
                if (sq_dist_within(u, v).first) g.adj[w++] = v;
            });
            std::sort(g.adj.begin() + g.adj_offsets[u], g.adj.begin() + w);
        }
    });

    g.comparisons = 2 * comparisons.load();
    g.edge_count = g.adj.size() / 2;
    g.d_max = 0;
    for (std::size_t u = 0; u < count; ++u) g.d_max = std::max(g.d_max, g.degree(u));
}

}  // namespace

bool LatticeGraph::adjacent(std::uint32_t u, std::uint32_t v) const {
    if (u == v) return false;
    if (degree(u) > degree(v)) std::swap(u, v);
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

void LatticeGraph::dump(std::ostream& os) const {
    const std::size_t count = vertex_count();
    for (std::size_t i = 0; i < count; ++i) {
        os << "v " << i;
        for (const std::int32_t c : vertex(i)) os << ' ' << c;
        os << '\n';
    }
    for (std::size_t u = 0; u < count; ++u)
        for (const std::uint32_t v : neighbors(u))
            if (v > u) os << "e " << u << ' ' << v << '\n';
}

std::uint64_t ShellProfile::total() const {
    std::uint64_t sum = 0;
    for (const auto c : counts) sum += c;
    return sum;
}

std::vector<std::int32_t> enumerate_cube_points(int n, std::int64_t s,
                                                const Budget& budget) {
    if (n < 1) throw std::invalid_argument("enumerate_cube_points: n must be >= 1");
    if (s < 0 || s % 2 != 0)
        throw std::invalid_argument("enumerate_cube_points: s must be even and >= 0");

    const long double predicted = pow_count(static_cast<long double>(s + 1), n);
    if (predicted > static_cast<long double>(budget.max_vertices))
        throw BudgetExceeded("enumerate_cube_points: predicted vertex count exceeds budget",
                             static_cast<double>(predicted));

    const auto count = static_cast<std::size_t>(predicted);
    const std::int32_t h = static_cast<std::int32_t>(s / 2);
    std::vector<std::int32_t> coords;
    coords.reserve(count * static_cast<std::size_t>(n));
    std::vector<std::int32_t> v(n, -h);
    for (;;) {
        coords.insert(coords.end(), v.begin(), v.end());
        int axis = n - 1;
        while (axis >= 0 && v[axis] == h) v[axis--] = -h;
        if (axis < 0) break;
        ++v[axis];
    }
    return coords;
}

std::uint64_t count_ball_lattice_points(int n, std::int64_t r, const Budget& budget) {
    if (n < 1 || r < 1)
        throw std::invalid_argument("count_ball_lattice_points: need n >= 1, r >= 1");
    return count_ball_points_checked(n, r, budget, "count_ball_lattice_points");
}

LatticeGraph build_graph(const PackingParams& p, const Budget& budget,
                         unsigned threads) {
    p.validate();
    LatticeGraph g;
    g.params = p;
    g.domain = VertexDomain::cube;
    g.coords = enumerate_cube_points(p.n, p.s, budget);
    build_adjacency(g, budget, threads);
    return g;
}

LatticeGraph build_neighborhood_graph(const PackingParams& p, const Budget& budget,
                                      unsigned threads) {
    p.validate();
    LatticeGraph g;
    g.params = p;
    g.domain = VertexDomain::punctured_ball;
    g.coords = enumerate_ball_points(p.n, p.r, budget, /*include_origin=*/false);
    build_adjacency(g, budget, threads);
    return g;
}

ShellProfile shell_profile(const PackingParams& p, const Budget& budget) {
    p.validate();
    const auto coords = enumerate_ball_points(p.n, p.r, budget, /*include_origin=*/false);
    ShellProfile profile;
    profile.r = p.r;
    profile.counts.assign(static_cast<std::size_t>(4 * p.r * p.r), 0);
    const std::size_t count = coords.size() / static_cast<std::size_t>(p.n);
    for (std::size_t i = 0; i < count; ++i) {
        std::int64_t k = 0;
        for (int a = 0; a < p.n; ++a) {
            const std::int64_t c = coords[i * p.n + a];
            k += c * c;
        }
        ++profile.counts[static_cast<std::size_t>(k)];
    }
    return profile;
}

std::uint64_t triangle_count(const LatticeGraph& g) {
    const std::size_t count = g.vertex_count();
    std::uint64_t triangles = 0;
    for (std::size_t u = 0; u < count; ++u) {
        const auto nu = g.neighbors(u);
        for (const std::uint32_t v : nu) {
            if (v <= u) continue;
            // Common neighbors w with w > v close a triangle u < v < w.
            const auto nv = g.neighbors(v);
            auto iu = std::upper_bound(nu.begin(), nu.end(), v);
            auto iv = std::upper_bound(nv.begin(), nv.end(), v);
            while (iu != nu.end() && iv != nv.end()) {
                if (*iu < *iv) ++iu;
                else if (*iv < *iu) ++iv;
                else ++triangles, ++iu, ++iv;
            }
        }
    }
    return triangles;
}

std::vector<std::uint64_t> neighborhood_edge_counts(const LatticeGraph& g) {
    const std::size_t count = g.vertex_count();
    std::vector<std::uint64_t> result(count, 0);
    for (std::size_t v = 0; v < count; ++v) {
        const auto nv = g.neighbors(v);
        std::uint64_t edges = 0;
        for (const std::uint32_t u : nv) {
            // Edges (u, w) inside N(v) with w > u, counted once.
            const auto nu = g.neighbors(u);
            auto iu = std::upper_bound(nu.begin(), nu.end(), u);
            auto iv = std::upper_bound(nv.begin(), nv.end(), u);
            while (iu != nu.end() && iv != nv.end()) {
                if (*iu < *iv) ++iu;
                else if (*iv < *iu) ++iv;
                else ++edges, ++iu, ++iv;
            }
        }
        result[v] = edges;
    }
    return result;
}

std::uint64_t neighborhood_edge_max(const LatticeGraph& g) {
    const auto counts = neighborhood_edge_counts(g);
    std::uint64_t t = 0;
    for (const auto e : counts) t = std::max(t, e);
    return t;
}

}  // namespace pforge
