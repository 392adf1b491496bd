#include "sw/numeric.hpp"

#include "sw/types.hpp"

#include <cmath>
#include <stdexcept>

namespace sw {

double inv_norm_cdf(double p) noexcept {
    // P. J. Acklam (2003)
    static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                    -2.759285104469687e+02, 1.383577518672690e+02,
                                    -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                    -1.556989798598866e+02, 6.680131188771972e+01,
                                    -1.328068155288572e+01};
    static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                    -2.400758277161838e+00, -2.549732539343734e+00,
                                    4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                    2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;
    constexpr double p_high = 1.0 - p_low;

    if (p < 1e-12) p = 1e-12;
    if (p > 1.0 - 1e-12) p = 1.0 - 1e-12;

    double x;
    if (p < p_low) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= p_high) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    // one Halley step on erfc (Acklam's refinement) pushes the absolute
    // error to the e-15 range
    const double e = 0.5 * std::erfc(-x / std::sqrt(2.0)) - p;
    const double u = e * std::sqrt(2.0 * M_PI) * std::exp(0.5 * x * x);
    return x - u / (1.0 + 0.5 * x * u);
}

double norm_cdf(double x) noexcept {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

namespace {

// continued fraction for the incomplete beta (modified Lentz)
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-15;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::abs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw std::runtime_error("reg_inc_beta: continued fraction did not converge");
}

} // namespace

double reg_inc_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0) throw std::invalid_argument("reg_inc_beta: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0))
        return bt * betacf(a, b, x) / a;
    return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double cap_measure(std::size_t d, double t) {
    if (d < 2) throw InvalidDimension("cap_measure: d must be >= 2");
    if (t >= 1.0) return 0.0;
    if (t <= -1.0) return 1.0;
    const double half = (t >= 0.0) ? t : -t;
    const double tail = 0.5 * reg_inc_beta(0.5 * (d - 1), 0.5, 1.0 - half * half);
    return (t >= 0.0) ? tail : 1.0 - tail;
}

StolarskyConstants stolarsky_constants(std::size_t d) {
    if (d < 2) throw InvalidDimension("stolarsky_constants: d must be >= 2");
    const double dd = static_cast<double>(d);
    // Z_d = int_{-1}^{1} (1-s^2)^{(d-3)/2} ds
    const double ln_z = 0.5 * std::log(M_PI) + std::lgamma(0.5 * (dd - 1.0)) -
                        std::lgamma(0.5 * dd);
    const double c_d = std::exp(-ln_z) / (dd - 1.0);
    const double ln_a = (dd - 1.0) * std::log(2.0) + 2.0 * std::lgamma(0.5 * dd) -
                        0.5 * std::log(M_PI) - std::lgamma(dd - 0.5);
    return {c_d, std::exp(ln_a)};
}

} // namespace sw
