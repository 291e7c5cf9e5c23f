#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pforge/independence.hpp"
#include "pforge/lattice_graph.hpp"
#include "pforge/params.hpp"

namespace pforge {

// A set of non-overlapping open spheres of radius r centered on integer
// points inside the cube of side s.  Density is the exact rational
// count * V_n * r^n / (s+2r)^n of the tiling cube of side s + 2r.
struct Packing {
    PackingParams params;
    std::vector<std::int64_t> centers;  // count * n, lexicographic

    std::uint64_t count() const {
        return params.n == 0 ? 0 : centers.size() / static_cast<std::size_t>(params.n);
    }

    std::span<const std::int64_t> center(std::size_t i) const {
        return {centers.data() + i * static_cast<std::size_t>(params.n),
                static_cast<std::size_t>(params.n)};
    }

    // count * V_n * r^n / (s+2r)^n with integer-exact powers.
    long double density() const;
    double density_log2() const;  // -inf for the empty packing

    // The rational part of the density (density / V_n) as exact integers.
    struct DensityRatio {
        std::uint64_t count;
        unsigned __int128 r_pow_n;
        unsigned __int128 box_pow_n;
    };
    // Throws std::overflow_error if a power exceeds 128 bits.
    DensityRatio density_ratio() const;
};

struct Violation {
    std::size_t i = 0;
    std::size_t j = 0;
    std::int64_t sq_dist = 0;  // < 4r^2, i.e. open spheres overlap

    bool operator==(const Violation&) const = default;
};

struct VerificationReport {
    bool separation_ok = true;   // all pairs at squared distance >= 4r^2
    bool containment_ok = true;  // all |c_i| <= s/2
    // Smallest pairwise squared distance among examined pairs; absent for
    // fewer than two centers.
    std::optional<std::int64_t> min_squared_distance;
    std::vector<Violation> violations;            // sorted by (i, j)
    std::vector<std::size_t> out_of_cube;         // sorted center indices
    // True when every pair was examined (all-pairs path); the cell-list
    // path examines every pair that could possibly violate.
    bool exhaustive_pairs = true;

    bool pass() const { return separation_ok && containment_ok; }
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
          line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class VerificationError : public std::runtime_error {
public:
    VerificationError(const std::string& what, VerificationReport report)
        : std::runtime_error(what), report_(std::move(report)) {}
    const VerificationReport& report() const noexcept { return report_; }

private:
    VerificationReport report_;
};

// Spheres about the vertices of an independent set.  The set must be
// independent in g (internal error otherwise) and g built from p.
Packing assemble(const PackingParams& p, const IndependentSet& iset,
                 const LatticeGraph& g);

// Pairwise separation and cube containment, integer arithmetic only.
// All-pairs up to 10^4 centers, cell-list accelerated above.
VerificationReport verify(const Packing& pk, unsigned threads = 1);

// Text format:
//   n=<n> r=<r> s=<s> count=<k>
//   <k lines of n space-separated integers>
//   sha256=<hex of the preceding bytes>
void export_packing(const Packing& pk, std::ostream& os);
std::string export_packing_string(const Packing& pk);

// Parses, recomputes the checksum, and re-verifies the geometry.  Throws
// ParseError on malformed input and VerificationError (with the report)
// on geometrically invalid data.  Density is always recomputed.
Packing import_packing(std::istream& is);
Packing import_packing_string(std::string_view text);

std::string sha256_hex(std::string_view data);

}  // namespace pforge
