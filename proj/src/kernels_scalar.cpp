#include "sw/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <vector>

namespace sw::kernels {

namespace {

void dot_rows_scalar(const double* points, std::size_t n, std::size_t dim,
                     const double* theta, double* out) {
    if (dim == 2) {
        const double t0 = theta[0], t1 = theta[1];
        for (std::size_t k = 0; k < n; ++k)
            out[k] = points[2 * k] * t0 + points[2 * k + 1] * t1;
        return;
    }
    if (dim == 3) {
        const double t0 = theta[0], t1 = theta[1], t2 = theta[2];
        for (std::size_t k = 0; k < n; ++k) {
            const double* p = points + 3 * k;
            out[k] = p[0] * t0 + p[1] * t1 + p[2] * t2;
        }
        return;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double* p = points + k * dim;
        double acc = 0.0;
        for (std::size_t j = 0; j < dim; ++j)
            acc += p[j] * theta[j];
        out[k] = acc;
    }
}

double sum_sq_diff_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return acc;
}

double pairwise_dist_sum_scalar(const double* points, std::size_t n, std::size_t dim) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double* pi = points + i * dim;
        double row = 0.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            const double* pj = points + j * dim;
            double sq = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                const double d = pi[c] - pj[c];
                sq += d * d;
            }
            row += std::sqrt(sq);
        }
        total += row;
    }
    return 2.0 * total; // ordered pairs
}

constexpr Backend kScalar{dot_rows_scalar, sum_sq_diff_scalar, pairwise_dist_sum_scalar,
                          "scalar"};

double pairwise_tree(const double* v, std::size_t n) {
    // recursive halving; exact association order fixed by n alone
    if (n == 0) return 0.0;
    if (n == 1) return v[0];
    if (n == 2) return v[0] + v[1];
    const std::size_t half = n / 2;
    return pairwise_tree(v, half) + pairwise_tree(v + half, n - half);
}

} // namespace

const Backend& scalar_backend() noexcept { return kScalar; }

void radix_sort(double* values, std::size_t n, std::uint64_t* scratch) {
    if (n < 2) return;
    std::uint64_t* a = scratch;
    std::uint64_t* b = scratch + n;
    // order-preserving key image: flip the sign bit for non-negatives,
    // all bits for negatives
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t k;
        std::memcpy(&k, values + i, 8);
        k ^= (k >> 63) ? ~std::uint64_t{0} : (std::uint64_t{1} << 63);
        a[i] = k;
    }
    std::uint32_t hist[256];
    for (unsigned pass = 0; pass < 8; ++pass) {
        const unsigned shift = 8 * pass;
        std::fill(hist, hist + 256, 0u);
        for (std::size_t i = 0; i < n; ++i) ++hist[(a[i] >> shift) & 0xFF];
        // a pass whose byte is constant moves nothing
        if (hist[(a[0] >> shift) & 0xFF] == n) continue;
        std::uint32_t total = 0;
        for (unsigned v = 0; v < 256; ++v) {
            const std::uint32_t count = hist[v];
            hist[v] = total;
            total += count;
        }
        for (std::size_t i = 0; i < n; ++i) b[hist[(a[i] >> shift) & 0xFF]++] = a[i];
        std::swap(a, b);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t k = a[i];
        k ^= (k >> 63) ? (std::uint64_t{1} << 63) : ~std::uint64_t{0};
        std::memcpy(values + i, &k, 8);
    }
}

double deterministic_sum(const double* values, std::size_t n) {
    constexpr std::size_t kChunk = 1024;
    if (n <= kChunk) return pairwise_tree(values, n);
    std::vector<double> partial;
    partial.reserve((n + kChunk - 1) / kChunk);
    for (std::size_t off = 0; off < n; off += kChunk)
        partial.push_back(pairwise_tree(values + off, std::min(kChunk, n - off)));
    return pairwise_tree(partial.data(), partial.size());
}

double deterministic_sum_sorted(const double* values, std::size_t n) {
    std::vector<double> sorted(values, values + n);
    std::sort(sorted.begin(), sorted.end());
    return deterministic_sum(sorted.data(), sorted.size());
}

} // namespace sw::kernels
