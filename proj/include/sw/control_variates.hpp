#pragma once

#include "sw/ot1d.hpp"
#include "sw/rng.hpp"
#include "sw/types.hpp"

#include <cstdint>
#include <vector>

namespace sw {

// N(d, n): number of spherical harmonics of degree n in dimension d
std::uint64_t count_harmonics(std::size_t d, std::size_t n);

// L(n, d) = sum over l = 1..n of N(d, 2l)
std::uint64_t basis_size(std::size_t d, std::size_t n);

// Zero-mean control-variate basis: every harmonic homogeneous polynomial
// of even degree in [2, 2n] (as a span), orthonormalized against an
// empirical Gram matrix for conditioning. On the circle (d = 2) the basis
// is {cos 2k t, sin 2k t}.
class HarmonicBasis {
public:
    static HarmonicBasis build(std::size_t d, std::size_t n, std::size_t cap = 5000);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t degree() const noexcept { return 2 * n_; }
    std::size_t size() const noexcept { return p_; }

    // writes the p basis values at a unit vector into out
    void evaluate(const double* point, double* out) const;
    std::vector<double> evaluate_matrix(const DirectionSet& dirs) const; // M x p

private:
    struct Term {
        double coeff;
        std::vector<unsigned> exponents; // length d
    };
    struct Poly {
        std::vector<Term> terms;
    };

    std::size_t dim_ = 0;
    std::size_t n_ = 0;
    std::size_t p_ = 0;
    bool circle_ = false;
    std::vector<Poly> polys_;
    unsigned max_power_ = 0;
};

struct ShcvOptions {
    // degree schedule n = max(1, floor(M^{1/(2(d-1))} / 2)) unless fixed
    int degree = -1;
    unsigned threads = 1;
};

// Control-variates estimate of SW2^2: least squares of the f samples on
// [1 | Y], where Y holds the basis evaluated at M i.i.d. uniform
// directions; the fitted intercept is the estimate.
EstimateResult shcv_estimate(const PointCloud& mu, const PointCloud& nu, std::size_t m,
                             Rng& rng, const ShcvOptions& opt = {});

std::size_t shcv_default_degree(std::size_t m, std::size_t d);

// least squares core, exposed for the estimator invariance tests:
// returns the intercept of the centered QR fit (ridge fallback on rank
// deficiency)
double fit_control_variates(const std::vector<double>& f, const std::vector<double>& y,
                            std::size_t p, std::vector<double>* beta_out = nullptr);

} // namespace sw
