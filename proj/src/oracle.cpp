#include "pforge/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "pforge/geometry.hpp"
#include "pforge/parallel.hpp"
#include "pforge/rng.hpp"

namespace pforge {

namespace {

// SplitMix64 output mixer.  Shard i draws from mix64(seed) ^ i; mixing
// first keeps nearby user seeds from producing the same multiset of shard
// streams (seed ^ i alone collides for seeds in one 16-aligned block).
std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Splits samples across shards (earlier shards take the remainder) and
// sums integer hit counts in shard order; the estimate is a pure function
// of (seed, samples, shards).
template <typename ShardFn>
McEstimate run_sharded(std::uint64_t samples, std::uint64_t seed, unsigned threads,
                       unsigned shards, double scale, ShardFn&& shard_fn) {
    if (shards == 0) shards = 1;
    std::vector<std::uint64_t> hits(shards, 0);
    const std::uint64_t base = samples / shards;
    const std::uint64_t extra = samples % shards;
    const std::uint64_t mixed = mix64(seed);

    parallel_chunks(shards, 1, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint64_t shard_samples = base + (i < extra ? 1 : 0);
            SplitMix64 rng(mixed ^ static_cast<std::uint64_t>(i));
            hits[i] = shard_fn(rng, shard_samples);
        }
    });

    std::uint64_t total = 0;
    for (const auto h : hits) total += h;

    const double p = static_cast<double>(total) / static_cast<double>(samples);
    McEstimate est;
    est.mean = scale * p;
    est.std_error = scale * std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    est.samples = samples;
    est.seed = seed;
    return est;
}

}  // namespace

McEstimate mc_ball_intersection(int n, double rho, double delta,
                                std::uint64_t samples, std::uint64_t seed,
                                unsigned threads, unsigned shards) {
    if (n < 2 || n > 8)
        throw std::invalid_argument("mc_ball_intersection: n must be in [2, 8]");
    if (samples < 1000)
        throw std::invalid_argument("mc_ball_intersection: need at least 1000 samples");
    if (!(rho > 0) || !(delta > 0) || !(delta < 1))
        throw std::invalid_argument("mc_ball_intersection: invalid geometry");

    const double rho_sq = rho * rho;
    const double cx = 2.0 * rho * delta;  // second center, on the first axis
    const double scale = unit_ball_volume(n) * std::pow(rho, n);

    return run_sharded(samples, seed, threads, shards, scale,
                       [&](SplitMix64& rng, std::uint64_t m) {
                           std::uint64_t hits = 0;
                           double x[8];
                           for (std::uint64_t k = 0; k < m; ++k) {
                               // Rejection-sample the first ball from its
                               // bounding cube.
                               double norm_sq;
                               do {
                                   norm_sq = 0;
                                   for (int i = 0; i < n; ++i) {
                                       x[i] = rng.next_in(-rho, rho);
                                       norm_sq += x[i] * x[i];
                                   }
                               } while (norm_sq >= rho_sq);
                               const double dx = x[0] - cx;
                               const double d2 = norm_sq - x[0] * x[0] + dx * dx;
                               if (d2 < rho_sq) ++hits;
                           }
                           return hits;
                       });
}

McEstimate mc_packing_density(const Packing& pk, std::uint64_t samples,
                              std::uint64_t seed, unsigned threads,
                              unsigned shards) {
    const int n = pk.params.n;
    if (n > 4) throw std::invalid_argument("mc_packing_density: n must be <= 4");
    if (samples < 1000)
        throw std::invalid_argument("mc_packing_density: need at least 1000 samples");

    const std::int64_t r = pk.params.r;
    const double half_box = 0.5 * static_cast<double>(pk.params.s) +
                            static_cast<double>(r);
    const double r_sq = static_cast<double>(r) * static_cast<double>(r);
    const std::size_t count = pk.count();

    // Bucket centers by cells of side 2r; a point strictly inside a sphere
    // lies in the center's own or an adjacent cell.
    const std::int64_t cell = 2 * r;
    auto bucket_coord = [cell](std::int64_t c) {
        return c >= 0 ? c / cell : -((-c + cell - 1) / cell);
    };
    auto pack_key = [n](const std::int64_t* b) {
        std::uint64_t key = 0;
        for (int i = 0; i < n; ++i)
            key = key * 0x100000001B3ULL ^ static_cast<std::uint64_t>(b[i] + (1LL << 30));
        return key;
    };
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
    for (std::size_t i = 0; i < count; ++i) {
        std::int64_t b[4];
        const auto c = pk.center(i);
        for (int a = 0; a < n; ++a) b[a] = bucket_coord(c[a]);
        buckets[pack_key(b)].push_back(static_cast<std::uint32_t>(i));
    }

    return run_sharded(
        samples, seed, threads, shards, 1.0, [&](SplitMix64& rng, std::uint64_t m) {
            std::uint64_t hits = 0;
            double x[4];
            std::int64_t base[4], b[4];
            for (std::uint64_t k = 0; k < m; ++k) {
                for (int i = 0; i < n; ++i) {
                    x[i] = rng.next_in(-half_box, half_box);
                    base[i] = bucket_coord(static_cast<std::int64_t>(std::floor(x[i])));
                }
                bool inside = false;
                std::int64_t off[4];
                std::fill(off, off + n, -1);
                while (!inside) {
                    for (int i = 0; i < n; ++i) b[i] = base[i] + off[i];
                    if (const auto it = buckets.find(pack_key(b)); it != buckets.end()) {
                        for (const auto ci : it->second) {
                            const auto c = pk.center(ci);
                            double d2 = 0;
                            for (int i = 0; i < n; ++i) {
                                const double d = x[i] - static_cast<double>(c[i]);
                                d2 += d * d;
                            }
                            if (d2 < r_sq) {
                                inside = true;
                                break;
                            }
                        }
                    }
                    int axis = n - 1;
                    while (axis >= 0 && off[axis] == 1) off[axis--] = -1;
                    if (axis < 0) break;
                    ++off[axis];
                }
                if (inside) ++hits;
            }
            return hits;
        });
}

BruteStats brute_stats(const LatticeGraph& g) {
    const std::size_t count = g.vertex_count();
    if (count > 5000)
        throw BudgetExceeded("brute_stats: instance above the 5000-vertex cap",
                             static_cast<double>(count));

    BruteStats stats;
    if (count == 0) return stats;

    const int n = g.params.n;
    const std::int64_t limit = 4 * g.params.r * g.params.r - 1;
    const std::size_t words = (count + 63) / 64;
    std::vector<std::uint64_t> matrix(count * words, 0);
    std::vector<std::uint32_t> deg(count, 0);

    auto set_bit = [&](std::size_t u, std::size_t v) {
        matrix[u * words + (v >> 6)] |= 1ULL << (v & 63);
    };
    auto test_bit = [&](std::size_t u, std::size_t v) {
        return (matrix[u * words + (v >> 6)] >> (v & 63)) & 1ULL;
    };

    for (std::size_t u = 0; u < count; ++u) {
        const auto cu = g.vertex(u);
        for (std::size_t v = u + 1; v < count; ++v) {
            const auto cv = g.vertex(v);
            std::int64_t d2 = 0;
            for (int i = 0; i < n; ++i) {
                const std::int64_t d = static_cast<std::int64_t>(cu[i]) - cv[i];
                d2 += d * d;
            }
            if (d2 <= limit) {
                set_bit(u, v);
                set_bit(v, u);
                ++deg[u];
                ++deg[v];
                ++stats.edge_count;
            }
        }
    }
    for (std::size_t u = 0; u < count; ++u)
        stats.d_max = std::max(stats.d_max, deg[u]);

    std::uint64_t wedge_sum = 0;  // sum over v of e(N(v)) = 3 * triangles
    std::vector<std::uint32_t> nbh;
    for (std::size_t v = 0; v < count; ++v) {
        nbh.clear();
        for (std::size_t u = 0; u < count; ++u)
            if (test_bit(v, u)) nbh.push_back(static_cast<std::uint32_t>(u));
        std::uint64_t edges = 0;
        for (std::size_t a = 0; a < nbh.size(); ++a)
            for (std::size_t b = a + 1; b < nbh.size(); ++b)
                if (test_bit(nbh[a], nbh[b])) ++edges;
        wedge_sum += edges;
        stats.neighborhood_edge_max = std::max(stats.neighborhood_edge_max, edges);
    }
    stats.triangle_count = wedge_sum / 3;
    return stats;
}

}  // namespace pforge
