#pragma once

#include "sw/rng.hpp"
#include "sw/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace sw {

enum class CubeGenerator { halton, sobol };

// Low-discrepancy points in [0,1)^d, row-major
struct CubePointSet {
    std::vector<double> points;
    std::size_t m = 0;
    std::size_t dim = 0;
    CubeGenerator generator = CubeGenerator::halton;
    bool scrambled = false;                // true once a random shift was applied
    std::optional<std::uint64_t> seed;     // seed of that shift

    const double* row(std::size_t i) const noexcept { return points.data() + i * dim; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return points[i * dim + j]; }
};

// Halton sequence, bases = first d primes, row i = radical inverses of
// start_index + i. Index 0 is the all-zeros point, skipped by default.
CubePointSet halton(std::size_t m, std::size_t d, std::size_t start_index = 1);

// Sobol direction numbers in the Joe-Kuo "d s a m_1...m_s" layout
class SobolTable {
public:
    static SobolTable load(const std::string& path);
    static SobolTable parse(std::istream& in);
    static const SobolTable& joe_kuo_default(); // shipped new-joe-kuo-6 rows

    std::size_t max_dim() const noexcept { return 1 + rows_.size(); }

    struct Row {
        unsigned degree;
        unsigned poly; // interior coefficient bits of the primitive polynomial
        std::vector<std::uint64_t> m_init;
    };
    const Row& row(std::size_t sobol_dim) const { return rows_.at(sobol_dim - 2); }

private:
    std::vector<Row> rows_;
};

// Sobol sequence in Gray-code order; dimension 1 is the base-2 van der
// Corput sequence. Points are indices 1..m unless include_zero, in which
// case they are 0..m-1 (index 0 is the all-zeros point).
CubePointSet sobol(std::size_t m, std::size_t d, const SobolTable& table,
                   bool include_zero = false);
CubePointSet sobol(std::size_t m, std::size_t d);

struct MappingStats {
    std::size_t degenerate_inputs = 0; // normalize-mapping fallbacks to e1
};

// equal_area: [0,1)^2 -> S^2; spherical_coords: [0,1)^{d-1} -> S^{d-1};
// normalize: inverse normal CDF per coordinate then radial normalization
DirectionSet map_to_sphere(const CubePointSet& cube, SphereMapping mapping,
                           MappingStats* stats = nullptr);

// Cranley-Patterson: one uniform shift added to every row, modulo 1
CubePointSet randomize_shift(const CubePointSet& cube, Rng& rng);

// one Haar-orthogonal matrix applied to every direction
DirectionSet randomize_rotation(const DirectionSet& dirs, Rng& rng);

} // namespace sw
