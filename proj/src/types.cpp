#include "sw/types.hpp"

#include <cmath>
#include <sstream>

namespace sw {

PointCloud::PointCloud(std::size_t n, std::size_t dim)
    : n_(n), dim_(dim), data_(n * dim, 0.0) {
    if (n < 1) throw SizeError("PointCloud needs at least one point");
    if (dim < 1) throw InvalidDimension("PointCloud dimension must be >= 1");
}

PointCloud::PointCloud(std::vector<double> data, std::size_t dim)
    : dim_(dim), data_(std::move(data)) {
    if (dim < 1) throw InvalidDimension("PointCloud dimension must be >= 1");
    if (data_.empty() || data_.size() % dim != 0)
        throw SizeError("PointCloud data size not a multiple of dim");
    n_ = data_.size() / dim;
    for (double v : data_)
        if (!std::isfinite(v)) throw DataError("PointCloud coordinate not finite");
}

double PointCloud::second_moment() const noexcept {
    double acc = 0.0;
    for (std::size_t k = 0; k < n_; ++k) {
        const double* p = row(k);
        for (std::size_t j = 0; j < dim_; ++j)
            acc += p[j] * p[j];
    }
    return acc / static_cast<double>(n_);
}

Direction::Direction(std::vector<double> coords) : coords_(std::move(coords)) {
    double sq = 0.0;
    for (double c : coords_) sq += c * c;
    if (std::abs(std::sqrt(sq) - 1.0) > 1e-12)
        throw DimensionError("Direction is not unit-norm");
}

const char* to_string(SamplerKind k) noexcept {
    switch (k) {
        case SamplerKind::uniform: return "uniform";
        case SamplerKind::orthonormal: return "orthonormal";
        case SamplerKind::halton: return "halton";
        case SamplerKind::sobol: return "sobol";
        case SamplerKind::fibonacci: return "fibonacci";
        case SamplerKind::riesz: return "riesz";
        case SamplerKind::ssw: return "ssw";
    }
    return "?";
}

const char* to_string(SphereMapping m) noexcept {
    switch (m) {
        case SphereMapping::none: return "none";
        case SphereMapping::equal_area: return "equal_area";
        case SphereMapping::spherical_coords: return "spherical_coords";
        case SphereMapping::normalize: return "normalize";
    }
    return "?";
}

const char* to_string(Randomization r) noexcept {
    switch (r) {
        case Randomization::none: return "none";
        case Randomization::shift: return "shift";
        case Randomization::rotation: return "rotation";
    }
    return "?";
}

SamplerKind sampler_kind_from_string(const std::string& s) {
    if (s == "uniform") return SamplerKind::uniform;
    if (s == "orthonormal") return SamplerKind::orthonormal;
    if (s == "halton") return SamplerKind::halton;
    if (s == "sobol") return SamplerKind::sobol;
    if (s == "fibonacci") return SamplerKind::fibonacci;
    if (s == "riesz") return SamplerKind::riesz;
    if (s == "ssw") return SamplerKind::ssw;
    throw ConfigError("unknown sampler kind: " + s);
}

SphereMapping mapping_from_string(const std::string& s) {
    if (s == "none") return SphereMapping::none;
    if (s == "equal_area") return SphereMapping::equal_area;
    if (s == "spherical_coords") return SphereMapping::spherical_coords;
    if (s == "normalize") return SphereMapping::normalize;
    throw ConfigError("unknown sphere mapping: " + s);
}

Randomization randomization_from_string(const std::string& s) {
    if (s == "none") return Randomization::none;
    if (s == "shift") return Randomization::shift;
    if (s == "rotation") return Randomization::rotation;
    throw ConfigError("unknown randomization: " + s);
}

void SamplerSpec::validate(std::size_t dim) const {
    const bool on_sphere = kind == SamplerKind::uniform || kind == SamplerKind::orthonormal ||
                           kind == SamplerKind::fibonacci || kind == SamplerKind::riesz ||
                           kind == SamplerKind::ssw;
    if (on_sphere && mapping != SphereMapping::none)
        throw ConfigError("mapping applies only to cube sequences (halton, sobol)");
    if (!on_sphere && mapping == SphereMapping::none)
        throw ConfigError("cube sequences need a sphere mapping");
    if (kind == SamplerKind::fibonacci && dim != 3)
        throw ConfigError("fibonacci point set is defined on S^2 only (dim 3)");
    if (mapping == SphereMapping::equal_area && dim != 3)
        throw ConfigError("equal-area mapping targets S^2 only (dim 3)");
    if (kind == SamplerKind::ssw && dim < 3)
        throw InvalidDimension("ssw sampler requires dim >= 3");
    if (dim < 2) throw InvalidDimension("sphere sampling requires dim >= 2");
}

std::string SamplerSpec::to_string() const {
    std::ostringstream os;
    os << sw::to_string(kind);
    if (mapping != SphereMapping::none) os << ":" << sw::to_string(mapping);
    if (randomization != Randomization::none) os << "+" << sw::to_string(randomization);
    for (const auto& [k, v] : hyperparams) os << "," << k << "=" << v;
    return os.str();
}

SamplerSpec SamplerSpec::parse(const std::string& text) {
    SamplerSpec spec;
    std::string head = text;
    std::string params;
    if (auto comma = head.find(','); comma != std::string::npos) {
        params = head.substr(comma + 1);
        head = head.substr(0, comma);
    }
    if (auto plus = head.find('+'); plus != std::string::npos) {
        spec.randomization = randomization_from_string(head.substr(plus + 1));
        head = head.substr(0, plus);
    }
    if (auto colon = head.find(':'); colon != std::string::npos) {
        spec.mapping = mapping_from_string(head.substr(colon + 1));
        head = head.substr(0, colon);
    }
    spec.kind = sampler_kind_from_string(head);
    std::istringstream ps(params);
    std::string item;
    while (std::getline(ps, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw ConfigError("bad hyperparameter: " + item);
        spec.hyperparams[item.substr(0, eq)] = std::stod(item.substr(eq + 1));
    }
    return spec;
}

DirectionSet::DirectionSet(std::size_t m, std::size_t dim, SamplerSpec strategy,
                           std::optional<std::uint64_t> seed)
    : m_(m), dim_(dim), data_(m * dim, 0.0), strategy_(std::move(strategy)), seed_(seed) {
    if (m < 1) throw SizeError("DirectionSet needs at least one direction");
    if (dim < 2) throw InvalidDimension("DirectionSet dimension must be >= 2");
}

Direction DirectionSet::direction(std::size_t j) const {
    return Direction(std::vector<double>(row(j), row(j) + dim_));
}

void DirectionSet::check_unit_norms(double tol) const {
    for (std::size_t j = 0; j < m_; ++j) {
        double sq = 0.0;
        const double* p = row(j);
        for (std::size_t c = 0; c < dim_; ++c) sq += p[c] * p[c];
        if (std::abs(std::sqrt(sq) - 1.0) > tol)
            throw DimensionError("DirectionSet row is not unit-norm");
    }
}

} // namespace sw
