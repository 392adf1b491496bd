#pragma once

#include "sw/rng.hpp"
#include "sw/types.hpp"

#include <vector>

namespace sw {

// out[k] = <x_k, theta>, order preserved
std::vector<double> project(const PointCloud& cloud, const Direction& theta);

// standard d-variate normal through Box-Muller on the Rng stream
std::vector<double> gaussian_vector(std::size_t d, Rng& rng);

// Z / ||Z|| for Z standard normal; redraws on ||Z|| < 1e-100
Direction gaussian_direction(std::size_t d, Rng& rng);

// Haar-distributed orthogonal d x d matrix (row-major): QR of a Gaussian
// matrix with the R diagonal signs forced positive
std::vector<double> haar_orthogonal(std::size_t d, Rng& rng);

// y = Q x for row-major d x d Q
void apply_matrix(const std::vector<double>& q, std::size_t d, const double* x, double* y);

} // namespace sw
