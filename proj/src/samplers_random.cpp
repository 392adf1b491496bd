#include "sw/samplers_random.hpp"

#include "sw/sphere.hpp"

namespace sw {

DirectionSet sample_uniform(std::size_t m, std::size_t d, Rng& rng) {
    if (m < 1) throw SizeError("sample_uniform: m must be >= 1");
    if (d < 2) throw InvalidDimension("sample_uniform: d must be >= 2");
    SamplerSpec spec;
    spec.kind = SamplerKind::uniform;
    DirectionSet out(m, d, spec, rng.seed());
    for (std::size_t j = 0; j < m; ++j) {
        const Direction dir = gaussian_direction(d, rng);
        for (std::size_t c = 0; c < d; ++c) out(j, c) = dir[c];
    }
    return out;
}

DirectionSet sample_orthonormal(std::size_t m, std::size_t d, Rng& rng) {
    if (m < 1) throw SizeError("sample_orthonormal: m must be >= 1");
    if (d < 2) throw InvalidDimension("sample_orthonormal: d must be >= 2");
    SamplerSpec spec;
    spec.kind = SamplerKind::orthonormal;
    DirectionSet out(m, d, spec, rng.seed());
    std::size_t written = 0;
    while (written < m) {
        const std::vector<double> q = haar_orthogonal(d, rng);
        for (std::size_t c = 0; c < d && written < m; ++c, ++written)
            for (std::size_t i = 0; i < d; ++i) out(written, i) = q[i * d + c];
    }
    return out;
}

} // namespace sw
