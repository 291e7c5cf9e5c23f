#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pforge {

// Instance parameters: dimension n, sphere radius r, inner cube side s.
// The centers live in the cube of side s, the spheres in the cube of
// side s + 2r.  Graph construction requires s even so that the lattice
// slice has exactly (s+1)^n points per the cube definition |x_i| <= s/2.
struct PackingParams {
    int n = 1;
    std::int64_t r = 1;
    std::int64_t s = 2;
    // When set, r and s must both be even (the regime the asymptotic
    // degree/volume arguments assume).
    bool paper_regime = false;

    void validate() const;  // throws std::invalid_argument

    bool operator==(const PackingParams&) const = default;
};

// Caps on instance sizes.  Enumeration and graph construction refuse
// instances whose predicted size exceeds these, reporting the prediction
// instead of attempting the work.
struct Budget {
    std::uint64_t max_vertices = 10'000'000;
    std::uint64_t max_pair_comparisons = 1'000'000'000;
};

class BudgetExceeded : public std::runtime_error {
public:
    BudgetExceeded(const std::string& what, double predicted)
        : std::runtime_error(what), predicted_(predicted) {}

    // Predicted instance size (vertex count, comparison count, ...).
    // Exact whenever it fits a double's integer range.
    double predicted() const noexcept { return predicted_; }

private:
    double predicted_;
};

}  // namespace pforge
