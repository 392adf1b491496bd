#pragma once

#include "sw/rng.hpp"
#include "sw/types.hpp"

#include <utility>
#include <vector>

namespace sw {

struct OptimizerTrace {
    std::vector<double> objective_per_iter;
    std::size_t iterations = 0;
    bool converged = false;
};

// Spherical Fibonacci lattice on S^2. The default spiral spans both
// hemispheres (z_m = 2(2m+1)/(2M+1) - 1); literal=true keeps the
// one-sided z_m = 2m/(2M+1) variant instead.
DirectionSet fibonacci_sphere(std::size_t m, bool literal = false);

// M-th roots of unity on S^1, optionally rotated by a phase offset; the
// minimal Riesz-energy configuration on the circle
DirectionSet unit_circle_grid(std::size_t m, double phase = 0.0);

// s-Riesz energy over ordered pairs: sum of d^{-s} for s>0, sum of
// log(1/d) for s=0, and the negated maximization objective -sum d^{|s|}
// for s<0. Coincident points with s >= 0 raise SingularConfiguration.
double riesz_energy(const DirectionSet& points, double s);

struct RieszOptions {
    double s = 0.1;
    std::size_t iterations = 10;
    double step = 1.0;
    bool backtrack = false; // halve the step (up to 20 times) on increase
};

// projected gradient descent on the s-Riesz energy, tangential steps,
// renormalization after every step; initialized from uniform sampling
// unless init is given
std::pair<DirectionSet, OptimizerTrace> riesz_minimize(std::size_t m, std::size_t d,
                                                       const RieszOptions& opt, Rng& rng,
                                                       const DirectionSet* init = nullptr);

struct SswOptions {
    std::size_t circles = 500; // L
    std::size_t iterations = 250;
    double learning_rate = 150.0; // on the unit-circumference objective scale
};

// Stochastic projected descent of the great-circle sliced discrepancy
// against the uniform measure. Requires d >= 3. The trace holds the
// per-iteration Monte Carlo objective in radians^2.
std::pair<DirectionSet, OptimizerTrace> ssw_minimize(std::size_t m, std::size_t d,
                                                     const SswOptions& opt, Rng& rng,
                                                     const DirectionSet* init = nullptr);

// angular nearest point of the great circle spanned by the orthonormal
// pair (e, f)
std::vector<double> project_to_great_circle(const std::vector<double>& x,
                                            const std::vector<double>& e,
                                            const std::vector<double>& f);

} // namespace sw
