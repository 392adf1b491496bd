#pragma once

#include "sw/rng.hpp"
#include "sw/samplers_lds.hpp"
#include "sw/types.hpp"

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace sw {

struct EstimateResult;

struct ConfidenceInterval {
    double center = 0.0;
    double half_width = 0.0;
    double level = 0.0;

    bool contains(double x) const noexcept {
        return x >= center - half_width && x <= center + half_width;
    }
};

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t used = 0;
    std::size_t excluded = 0; // non-positive errors dropped from the fit
};

struct StarDiscrepancy {
    double value = 0.0;
    bool exact = true; // false for the d >= 3 grid upper bound
};

// Exact star discrepancy for d in {1,2}; for d >= 3 a grid-based upper
// bound is returned with exact=false.
StarDiscrepancy star_discrepancy(const CubePointSet& cube);

// grid-corner sup of the discrepancy function, a lower bound on the exact
// value within 2/resolution (test oracle for the d=2 algorithm)
double star_discrepancy_grid(const CubePointSet& cube, std::size_t resolution);

// Squared spherical-cap L2 discrepancy through the invariance principle:
// C_d * (A_d - mean pairwise distance). Clamped at zero.
double cap_l2_discrepancy(const DirectionSet& dirs);

// Monte Carlo evaluation of the defining cap double integral; returns the
// estimate of the squared discrepancy and its standard error
std::pair<double, double> cap_l2_mc_oracle(const DirectionSet& dirs, std::size_t n_caps,
                                           Rng& rng);

// sup over n_caps random caps of |fraction-in-cap - cap measure|; a lower
// bound on the true max discrepancy
double cap_max_discrepancy_approx(const DirectionSet& dirs, std::size_t n_caps, Rng& rng);

// sqrt of the empirical (population) variance
double sigma_hat(const std::vector<double>& values);

ConfidenceInterval confidence_interval(double estimate, double sigma, std::size_t m,
                                       double level);

EstimateResult rqmc_aggregate(const std::vector<double>& replicates);

// ordinary least squares of log(error) on log(m)
SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& m_and_error);

// write "d C_d A_d" lines (15 significant digits) for the given dimensions
void write_stolarsky_constants(const std::string& path, const std::vector<std::size_t>& dims);

} // namespace sw
