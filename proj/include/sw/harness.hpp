#pragma once

#include "sw/ot1d.hpp"
#include "sw/rng.hpp"
#include "sw/types.hpp"

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

namespace sw {

// reserved seed for reference runs, disjoint from sweep seeds by convention
inline constexpr std::uint64_t kReferenceSeed = 0xFEEDFACE2468ACE0ull;

struct ReferenceProtocol {
    enum class Kind { analytic_two_dirac, big_uniform };
    Kind kind = Kind::big_uniform;
    std::size_t m_ref = 10'000'000;

    static ReferenceProtocol analytic() { return {Kind::analytic_two_dirac, 0}; }
    static ReferenceProtocol uniform(std::size_t m) { return {Kind::big_uniform, m}; }
};

// a sweep strategy: either a direction sampler or the control-variates
// estimator (which draws its own uniform directions)
struct StrategyChoice {
    SamplerSpec spec;
    bool shcv = false;
    int shcv_degree = -1; // -1: degree schedule

    std::string label() const;
    static StrategyChoice parse(const std::string& text);
};

struct ConvergenceRecord {
    StrategyChoice strategy;
    std::size_t dim = 0;
    std::size_t m = 0;
    double error = 0.0;
    double seconds = 0.0;
    std::uint64_t seed = 0;
};

struct ExperimentConfig {
    std::vector<std::size_t> dims;
    std::vector<std::size_t> m_schedule;
    std::vector<StrategyChoice> strategies;
    std::vector<std::uint64_t> seeds;
    ReferenceProtocol reference;
    std::size_t n_points = 1000;       // cloud size of the Gaussian benchmark pair
    std::uint64_t data_seed = 7;
    bool relative_error = false;
    bool amortized = false;            // reuse one direction set per (strategy, d, M),
                                       // timing estimation only
    unsigned threads = 1;
    std::string out_dir;

    void validate() const;
};

// Benchmark pair: means drawn N(1, I), covariance factors with i.i.d.
// standard normal entries, N points per cloud.
std::pair<PointCloud, PointCloud> gen_gaussian_pair(std::size_t d, std::size_t n, Rng& rng);

// the closed-form test case: two 2-point measures on S^2 touching clouds
// mu = {(1,0,0), (0,-1,0)}, nu = {(0,0,1), (0,0,-1)} and the analytic SW2^2
std::tuple<PointCloud, PointCloud, double> two_dirac_case();

EstimateResult reference_value(const PointCloud& mu, const PointCloud& nu,
                               const ReferenceProtocol& protocol, unsigned threads = 1);

// Diagonal augmentation of two persistence diagrams (flattened 2D point
// lists, possibly empty on one side) into a balanced pair of clouds.
std::pair<PointCloud, PointCloud> augment_diagrams(const std::vector<double>& d1,
                                                   const std::vector<double>& d2);

// builds the direction set of a sampler strategy (shcv is not a direction
// strategy and is rejected here)
DirectionSet make_directions(const SamplerSpec& spec, std::size_t m, std::size_t d,
                             std::uint64_t seed);

// one estimate under a strategy; the timer covers generation + estimation
EstimateResult estimate_with_strategy(const StrategyChoice& strategy, const PointCloud& mu,
                                      const PointCloud& nu, std::size_t m, std::uint64_t seed,
                                      unsigned threads = 1,
                                      const DirectionSet* cached = nullptr);

// pairwise SW2^2 with one shared direction set; symmetric, zero diagonal
std::vector<double> distance_matrix(const std::vector<PointCloud>& clouds,
                                    const DirectionSet& dirs, unsigned threads = 1,
                                    bool diagram_mode = false);

// full sweep; emits one CSV per (strategy, dim) under config.out_dir when
// it is non-empty
std::vector<ConvergenceRecord> convergence_sweep(const ExperimentConfig& config);

} // namespace sw
