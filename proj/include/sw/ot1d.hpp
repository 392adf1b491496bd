#pragma once

#include "sw/sphere.hpp"
#include "sw/types.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace sw {

// non-decreasing values plus the permutation sorted index -> original index
struct SortedProjection {
    std::vector<double> values;
    std::vector<std::size_t> perm;
};

struct EstimateResult {
    double value = 0.0;
    std::optional<double> std_error;
    std::size_t m_used = 0;
    double wall_time = 0.0; // seconds
};

// stable sort; ties between equal values keep original index order
SortedProjection sorted_projection(const std::vector<double>& values);

// exact discrete W2^2 on the line between two N-point uniform measures
double w2_squared_1d(const std::vector<double>& a, const std::vector<double>& b);

// f(theta) = W2^2 of the projections of mu and nu along theta
double f_eval(const PointCloud& mu, const PointCloud& nu, const Direction& theta);

// f over every direction of the set, in order (parallel inside, slot-per-index)
std::vector<double> f_values(const PointCloud& mu, const PointCloud& nu,
                             const DirectionSet& dirs, unsigned threads = 1);

// Monte Carlo SW2^2 over the direction set. The mean uses a sorted
// deterministic pairwise reduction: the value is bit-identical for any
// thread count and any ordering of the directions. std_error is sigma_hat
// / sqrt(M) for plain i.i.d. uniform sampling and absent otherwise.
EstimateResult sw2_estimate(const PointCloud& mu, const PointCloud& nu,
                            const DirectionSet& dirs, unsigned threads = 1);

// Exact squared 2-Wasserstein distance, geodesic cost, between the
// empirical measure on the angles and the uniform measure on the circle.
// Angles are reduced mod 2*pi; the result is in radians^2. Internally the
// circumference is normalized to 1 and the order-preserving quantile
// matching is minimized in closed form over the rotation offset, with the
// cyclic assignment chosen by exact enumeration of its N quadratic pieces.
double w2_squared_circle_to_uniform(const std::vector<double>& angles);

// internal form on [0,1) positions returning (value in turns^2, and the
// per-atom centered deviations of the optimal matching, sorted order)
double w2_circle_unit(std::vector<double> positions, std::vector<double>* deviations,
                      std::vector<std::size_t>* order);

} // namespace sw
