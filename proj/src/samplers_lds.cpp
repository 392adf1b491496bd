#include "sw/samplers_lds.hpp"

#include "sw/numeric.hpp"
#include "sw/sphere.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace sw {

namespace {

std::vector<std::size_t> first_primes(std::size_t count) {
    std::vector<std::size_t> primes;
    for (std::size_t candidate = 2; primes.size() < count; ++candidate) {
        bool ok = true;
        for (std::size_t p : primes) {
            if (p * p > candidate) break;
            if (candidate % p == 0) {
                ok = false;
                break;
            }
        }
        if (ok) primes.push_back(candidate);
    }
    return primes;
}

double radical_inverse(std::size_t index, std::size_t base) {
    double x = 0.0;
    double f = 1.0 / static_cast<double>(base);
    while (index > 0) {
        x += static_cast<double>(index % base) * f;
        index /= base;
        f /= static_cast<double>(base);
    }
    return x;
}

} // namespace

CubePointSet halton(std::size_t m, std::size_t d, std::size_t start_index) {
    if (m < 1) throw SizeError("halton: m must be >= 1");
    if (d < 1) throw InvalidDimension("halton: d must be >= 1");
    const auto primes = first_primes(d);
    CubePointSet out;
    out.m = m;
    out.dim = d;
    out.generator = CubeGenerator::halton;
    out.points.resize(m * d);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < d; ++j)
            out.points[i * d + j] = radical_inverse(start_index + i, primes[j]);
    return out;
}

SobolTable SobolTable::parse(std::istream& in) {
    SobolTable table;
    std::string line;
    std::size_t expected_dim = 2;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::size_t d;
        if (!(ls >> d)) continue; // header or comment line
        Row row;
        if (!(ls >> row.degree >> row.poly))
            throw DataError("sobol table: malformed row for d=" + std::to_string(d));
        if (d != expected_dim)
            throw DataError("sobol table: rows must be consecutive starting at d=2");
        row.m_init.resize(row.degree);
        for (unsigned k = 0; k < row.degree; ++k) {
            if (!(ls >> row.m_init[k]))
                throw DataError("sobol table: missing m value for d=" + std::to_string(d));
            if (row.m_init[k] % 2 == 0 || row.m_init[k] >= (1ull << (k + 1)))
                throw DataError("sobol table: m_k must be odd and < 2^k (d=" +
                                std::to_string(d) + ")");
        }
        table.rows_.push_back(std::move(row));
        ++expected_dim;
    }
    if (table.rows_.empty()) throw DataError("sobol table: no rows");
    return table;
}

SobolTable SobolTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("sobol table: cannot open " + path);
    return parse(in);
}

namespace detail {
// embedded copy of data/new-joe-kuo-6.64.txt (Joe & Kuo direction numbers)
extern const char kJoeKuoRows[];
}

const SobolTable& SobolTable::joe_kuo_default() {
    static const SobolTable table = [] {
        if (const char* env = std::getenv("SW_SOBOL_TABLE")) return SobolTable::load(env);
        std::istringstream in(detail::kJoeKuoRows);
        return SobolTable::parse(in);
    }();
    return table;
}

CubePointSet sobol(std::size_t m, std::size_t d, const SobolTable& table, bool include_zero) {
    if (m < 1) throw SizeError("sobol: m must be >= 1");
    if (d < 1) throw InvalidDimension("sobol: d must be >= 1");
    if (d > table.max_dim())
        throw TableExhausted("sobol: table covers " + std::to_string(table.max_dim()) +
                             " dimensions, requested " + std::to_string(d));

    constexpr unsigned kBits = 52;
    const std::size_t last_index = include_zero ? (m - 1) : m;
    unsigned need_bits = 1;
    while ((1ull << need_bits) <= last_index) ++need_bits;
    if (need_bits > kBits) throw SizeError("sobol: too many points");

    // direction integers per dimension, v[k] = m_k * 2^(kBits-k-1), k 0-based
    std::vector<std::vector<std::uint64_t>> v(d);
    for (std::size_t j = 0; j < d; ++j) {
        auto& vj = v[j];
        vj.resize(need_bits);
        if (j == 0) {
            for (unsigned k = 0; k < need_bits; ++k) vj[k] = 1ull << (kBits - k - 1);
            continue;
        }
        const auto& row = table.row(j + 1);
        const unsigned s = row.degree;
        std::vector<std::uint64_t> mk(row.m_init);
        mk.resize(std::max<std::size_t>(need_bits, s));
        for (unsigned k = s; k < need_bits; ++k) {
            std::uint64_t value = mk[k - s] ^ (mk[k - s] << s);
            for (unsigned i = 1; i < s; ++i)
                if ((row.poly >> (s - 1 - i)) & 1u) value ^= mk[k - i] << i;
            mk[k] = value;
        }
        for (unsigned k = 0; k < need_bits; ++k) vj[k] = mk[k] << (kBits - k - 1);
    }

    CubePointSet out;
    out.m = m;
    out.dim = d;
    out.generator = CubeGenerator::sobol;
    out.points.resize(m * d);

    std::vector<std::uint64_t> state(d, 0);
    constexpr double kScale = 0x1.0p-52;
    std::size_t written = 0;
    if (include_zero) {
        for (std::size_t j = 0; j < d; ++j) out.points[j] = 0.0;
        ++written;
    }
    for (std::size_t i = 1; written < m; ++i, ++written) {
        // Gray-code step: flip by the direction number of the lowest zero
        // bit of i-1 (Antonov-Saleev)
        unsigned c = 0;
        std::uint64_t n = i - 1;
        while (n & 1ull) {
            n >>= 1;
            ++c;
        }
        for (std::size_t j = 0; j < d; ++j) {
            state[j] ^= v[j][c];
            out.points[written * d + j] = static_cast<double>(state[j]) * kScale;
        }
    }
    return out;
}

CubePointSet sobol(std::size_t m, std::size_t d) {
    return sobol(m, d, SobolTable::joe_kuo_default(), false);
}

DirectionSet map_to_sphere(const CubePointSet& cube, SphereMapping mapping,
                           MappingStats* stats) {
    if (mapping == SphereMapping::none)
        throw MappingError("map_to_sphere: a mapping is required");

    SamplerSpec spec;
    spec.kind = cube.generator == CubeGenerator::halton ? SamplerKind::halton
                                                        : SamplerKind::sobol;
    spec.mapping = mapping;
    spec.randomization = cube.scrambled ? Randomization::shift : Randomization::none;

    if (mapping == SphereMapping::equal_area) {
        if (cube.dim != 2)
            throw MappingError("equal_area mapping needs points in the unit square");
        DirectionSet dirs(cube.m, 3, spec, cube.seed);
        for (std::size_t i = 0; i < cube.m; ++i) {
            const double eta = 2.0 * M_PI * cube(i, 0);
            const double beta = 1.0 - 2.0 * cube(i, 1);
            const double r = std::sqrt(std::max(0.0, 1.0 - beta * beta));
            double* u = dirs.row(i);
            u[0] = r * std::cos(eta);
            u[1] = r * std::sin(eta);
            u[2] = beta;
        }
        return dirs;
    }

    if (mapping == SphereMapping::spherical_coords) {
        const std::size_t d = cube.dim + 1;
        if (d < 2) throw MappingError("spherical_coords mapping needs at least one angle");
        DirectionSet dirs(cube.m, d, spec, cube.seed);
        for (std::size_t i = 0; i < cube.m; ++i) {
            double* u = dirs.row(i);
            double sin_prod = 1.0;
            for (std::size_t k = 0; k + 1 < cube.dim; ++k) {
                const double phi = M_PI * cube(i, k);
                u[k] = sin_prod * std::cos(phi);
                sin_prod *= std::sin(phi);
            }
            const double last = 2.0 * M_PI * cube(i, cube.dim - 1);
            u[d - 2] = sin_prod * std::cos(last);
            u[d - 1] = sin_prod * std::sin(last);
        }
        return dirs;
    }

    // normalize: inverse normal CDF per coordinate, then radial projection
    const std::size_t d = cube.dim;
    if (d < 2) throw MappingError("normalize mapping needs cube dimension >= 2");
    DirectionSet dirs(cube.m, d, spec, cube.seed);
    for (std::size_t i = 0; i < cube.m; ++i) {
        double* u = dirs.row(i);
        double sq = 0.0;
        for (std::size_t j = 0; j < d; ++j) {
            u[j] = inv_norm_cdf(cube(i, j));
            sq += u[j] * u[j];
        }
        const double norm = std::sqrt(sq);
        if (norm < 1e-100) {
            if (stats) ++stats->degenerate_inputs;
            for (std::size_t j = 0; j < d; ++j) u[j] = (j == 0) ? 1.0 : 0.0;
            continue;
        }
        for (std::size_t j = 0; j < d; ++j) u[j] /= norm;
    }
    return dirs;
}

CubePointSet randomize_shift(const CubePointSet& cube, Rng& rng) {
    CubePointSet out = cube;
    out.scrambled = true;
    out.seed = rng.seed();
    std::vector<double> shift(cube.dim);
    for (auto& s : shift) s = rng.next_double();
    for (std::size_t i = 0; i < cube.m; ++i)
        for (std::size_t j = 0; j < cube.dim; ++j) {
            double v = cube(i, j) + shift[j];
            if (v >= 1.0) v -= 1.0;
            out.points[i * cube.dim + j] = v;
        }
    return out;
}

DirectionSet randomize_rotation(const DirectionSet& dirs, Rng& rng) {
    const std::size_t d = dirs.dim();
    const std::vector<double> q = haar_orthogonal(d, rng);
    SamplerSpec spec = dirs.strategy();
    spec.randomization = Randomization::rotation;
    DirectionSet out(dirs.size(), d, spec, rng.seed());
    for (std::size_t i = 0; i < dirs.size(); ++i)
        apply_matrix(q, d, dirs.row(i), out.row(i));
    return out;
}

} // namespace sw
