#include "pforge/params.hpp"

namespace pforge {

void PackingParams::validate() const {
    if (n < 1) throw std::invalid_argument("params: dimension n must be >= 1");
    if (r < 1) throw std::invalid_argument("params: radius r must be >= 1");
    if (s < 0) throw std::invalid_argument("params: cube side s must be >= 0");
    // The lattice slice |x_i| <= s/2 has exactly s+1 integer values per
    // axis only for even s; odd sides would silently drop a layer.
    if (s % 2 != 0)
        throw std::invalid_argument("params: cube side s must be even");
    if (paper_regime && r % 2 != 0)
        throw std::invalid_argument("params: paper regime requires even r");
}

}  // namespace pforge
