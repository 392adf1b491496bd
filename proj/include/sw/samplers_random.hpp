#pragma once

#include "sw/rng.hpp"
#include "sw/types.hpp"

namespace sw {

// M i.i.d. uniform directions on S^{d-1}
DirectionSet sample_uniform(std::size_t m, std::size_t d, Rng& rng);

// Columns of ceil(M/d) Haar orthogonal matrices, truncated to M. Each
// direction is marginally uniform; directions within a block are mutually
// orthogonal.
DirectionSet sample_orthonormal(std::size_t m, std::size_t d, Rng& rng);

} // namespace sw
