#pragma once

#include <cstddef>

namespace sw {

// Acklam's rational approximation of the standard normal quantile,
// absolute error below 1.2e-9 on (0,1). Inputs are clamped to
// [1e-12, 1 - 1e-12].
double inv_norm_cdf(double p) noexcept;

// standard normal CDF via erfc (used as the oracle pairing of inv_norm_cdf)
double norm_cdf(double x) noexcept;

// regularized incomplete beta I_x(a,b)
double reg_inc_beta(double a, double b, double x);

// normalized surface measure of the spherical cap C(c,t) on S^{d-1},
// computed through the incomplete beta of the cap height
double cap_measure(std::size_t d, double t);

struct StolarskyConstants {
    double c_d; // proportionality constant of the invariance principle
    double a_d; // mean distance of two independent uniform sphere points
};

// closed forms through lgamma; see stolarsky_constants.txt for the
// generated table with provenance notes
StolarskyConstants stolarsky_constants(std::size_t d);

} // namespace sw
