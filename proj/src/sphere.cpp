#include "sw/sphere.hpp"

#include "sw/kernels.hpp"

#include <cmath>

namespace sw {

std::vector<double> project(const PointCloud& cloud, const Direction& theta) {
    if (cloud.dim() != theta.dim())
        throw DimensionError("project: cloud and direction dimensions differ");
    std::vector<double> out(cloud.n());
    kernels::dot_rows(cloud.data().data(), cloud.n(), cloud.dim(), theta.data(), out.data());
    return out;
}

std::vector<double> gaussian_vector(std::size_t d, Rng& rng) {
    std::vector<double> z(d);
    for (std::size_t j = 0; j + 1 < d; j += 2) {
        const double u1 = rng.next_double_open0();
        const double u2 = rng.next_double();
        const double r = std::sqrt(-2.0 * std::log(u1));
        z[j] = r * std::cos(2.0 * M_PI * u2);
        z[j + 1] = r * std::sin(2.0 * M_PI * u2);
    }
    if (d % 2 == 1) {
        const double u1 = rng.next_double_open0();
        const double u2 = rng.next_double();
        z[d - 1] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    return z;
}

Direction gaussian_direction(std::size_t d, Rng& rng) {
    if (d < 2) throw InvalidDimension("gaussian_direction: d must be >= 2");
    for (;;) {
        std::vector<double> z = gaussian_vector(d, rng);
        double sq = 0.0;
        for (double v : z) sq += v * v;
        const double norm = std::sqrt(sq);
        if (norm < 1e-100) continue;
        for (double& v : z) v /= norm;
        return Direction(std::move(z));
    }
}

std::vector<double> haar_orthogonal(std::size_t d, Rng& rng) {
    // Householder QR of a Gaussian matrix; Q columns flipped so that
    // diag(R) > 0, which makes the law exactly Haar
    std::vector<double> a = gaussian_vector(d * d, rng);

    // build Q explicitly, accumulating Householder reflectors
    std::vector<double> q(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) q[i * d + i] = 1.0;
    std::vector<double> v(d), w(d);
    std::vector<double> r_diag(d);

    for (std::size_t k = 0; k < d; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < d; ++i) norm += a[i * d + k] * a[i * d + k];
        norm = std::sqrt(norm);
        if (norm == 0.0) {
            r_diag[k] = 0.0;
            continue;
        }
        const double alpha = (a[k * d + k] >= 0.0) ? -norm : norm;
        double vnorm_sq = 0.0;
        for (std::size_t i = k; i < d; ++i) {
            v[i] = a[i * d + k];
            if (i == k) v[i] -= alpha;
            vnorm_sq += v[i] * v[i];
        }
        r_diag[k] = alpha;
        if (vnorm_sq == 0.0) continue;

        // A <- (I - 2 v v^T / v^T v) A on the trailing block
        for (std::size_t j = k; j < d; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < d; ++i) dot += v[i] * a[i * d + j];
            const double f = 2.0 * dot / vnorm_sq;
            for (std::size_t i = k; i < d; ++i) a[i * d + j] -= f * v[i];
        }
        // Q <- Q (I - 2 v v^T / v^T v)
        for (std::size_t i = 0; i < d; ++i) {
            double dot = 0.0;
            for (std::size_t j = k; j < d; ++j) dot += q[i * d + j] * v[j];
            const double f = 2.0 * dot / vnorm_sq;
            for (std::size_t j = k; j < d; ++j) q[i * d + j] -= f * v[j];
        }
    }

    for (std::size_t k = 0; k < d; ++k) {
        if (r_diag[k] < 0.0)
            for (std::size_t i = 0; i < d; ++i) q[i * d + k] = -q[i * d + k];
    }
    return q;
}

void apply_matrix(const std::vector<double>& q, std::size_t d, const double* x, double* y) {
    for (std::size_t i = 0; i < d; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < d; ++j) acc += q[i * d + j] * x[j];
        y[i] = acc;
    }
}

} // namespace sw
