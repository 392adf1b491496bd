#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sw {

struct DimensionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidDimension : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct UnbalancedError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MappingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TableExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SingularConfiguration : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BasisTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DiagramError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Discrete probability measure: N points in R^d, uniform weights 1/N.
// Row-major storage, one point per row.
class PointCloud {
public:
    PointCloud(std::size_t n, std::size_t dim);
    PointCloud(std::vector<double> data, std::size_t dim);

    std::size_t n() const noexcept { return n_; }
    std::size_t dim() const noexcept { return dim_; }

    const double* row(std::size_t k) const noexcept { return data_.data() + k * dim_; }
    double* row(std::size_t k) noexcept { return data_.data() + k * dim_; }
    double operator()(std::size_t k, std::size_t j) const noexcept { return data_[k * dim_ + j]; }
    double& operator()(std::size_t k, std::size_t j) noexcept { return data_[k * dim_ + j]; }

    const std::vector<double>& data() const noexcept { return data_; }

    // mean squared Euclidean norm of the points
    double second_moment() const noexcept;

private:
    std::size_t n_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

// Unit vector in R^d (norm 1 within 1e-12, checked on construction).
class Direction {
public:
    explicit Direction(std::vector<double> coords);

    std::size_t dim() const noexcept { return coords_.size(); }
    const double* data() const noexcept { return coords_.data(); }
    double operator[](std::size_t j) const noexcept { return coords_[j]; }
    const std::vector<double>& coords() const noexcept { return coords_; }

private:
    std::vector<double> coords_;
};

enum class SamplerKind { uniform, orthonormal, halton, sobol, fibonacci, riesz, ssw };
enum class SphereMapping { none, equal_area, spherical_coords, normalize };
enum class Randomization { none, shift, rotation };

const char* to_string(SamplerKind k) noexcept;
const char* to_string(SphereMapping m) noexcept;
const char* to_string(Randomization r) noexcept;
SamplerKind sampler_kind_from_string(const std::string& s);
SphereMapping mapping_from_string(const std::string& s);
Randomization randomization_from_string(const std::string& s);

// Declarative description of a sampling strategy.
struct SamplerSpec {
    SamplerKind kind = SamplerKind::uniform;
    SphereMapping mapping = SphereMapping::none;
    Randomization randomization = Randomization::none;
    std::map<std::string, double> hyperparams;

    // fibonacci and equal_area exist only on S^2; mapping none only for
    // kinds defined directly on the sphere
    void validate(std::size_t dim) const;

    double param(const std::string& name, double fallback) const {
        auto it = hyperparams.find(name);
        return it == hyperparams.end() ? fallback : it->second;
    }

    std::string to_string() const;
    static SamplerSpec parse(const std::string& text);

    bool operator==(const SamplerSpec& other) const = default;
};

// M unit vectors plus provenance metadata.
class DirectionSet {
public:
    DirectionSet(std::size_t m, std::size_t dim, SamplerSpec strategy,
                 std::optional<std::uint64_t> seed);

    std::size_t size() const noexcept { return m_; }
    std::size_t dim() const noexcept { return dim_; }

    const double* row(std::size_t j) const noexcept { return data_.data() + j * dim_; }
    double* row(std::size_t j) noexcept { return data_.data() + j * dim_; }
    double operator()(std::size_t j, std::size_t c) const noexcept { return data_[j * dim_ + c]; }
    double& operator()(std::size_t j, std::size_t c) noexcept { return data_[j * dim_ + c]; }

    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

    Direction direction(std::size_t j) const;

    const SamplerSpec& strategy() const noexcept { return strategy_; }
    SamplerSpec& strategy() noexcept { return strategy_; }
    std::optional<std::uint64_t> seed() const noexcept { return seed_; }
    void set_seed(std::optional<std::uint64_t> s) noexcept { seed_ = s; }

    // every row unit-norm within tol; throws DimensionError otherwise
    void check_unit_norms(double tol = 1e-12) const;

private:
    std::size_t m_ = 0;
    std::size_t dim_ = 0;
    std::vector<double> data_;
    SamplerSpec strategy_;
    std::optional<std::uint64_t> seed_;
};

} // namespace sw
