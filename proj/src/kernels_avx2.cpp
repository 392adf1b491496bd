#if defined(__x86_64__) || defined(_M_X64)

#include "sw/kernels.hpp"

#include <cstddef>
#include <immintrin.h>

namespace sw::kernels {

namespace {

__attribute__((target("avx2"))) inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

__attribute__((target("avx2")))
void dot_rows_avx2(const double* points, std::size_t n, std::size_t dim,
                   const double* theta, double* out) {
    if (dim < 4) {
        // too few lanes per row to pay for shuffles
        scalar_backend().dot_rows(points, n, dim, theta, out);
        return;
    }
    const std::size_t dim4 = dim & ~std::size_t(3);
    for (std::size_t k = 0; k < n; ++k) {
        const double* p = points + k * dim;
        __m256d acc = _mm256_setzero_pd();
        for (std::size_t j = 0; j < dim4; j += 4) {
            const __m256d pv = _mm256_loadu_pd(p + j);
            const __m256d tv = _mm256_loadu_pd(theta + j);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(pv, tv));
        }
        double s = hsum(acc);
        for (std::size_t j = dim4; j < dim; ++j)
            s += p[j] * theta[j];
        out[k] = s;
    }
}

__attribute__((target("avx2")))
double sum_sq_diff_avx2(const double* a, const double* b, std::size_t n) {
    const std::size_t n4 = n & ~std::size_t(3);
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t i = 0; i < n4; i += 4) {
        const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
    }
    double s = hsum(acc);
    for (std::size_t i = n4; i < n; ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

__attribute__((target("avx2")))
double pairwise_dist_sum_avx2(const double* points, std::size_t n, std::size_t dim) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double* pi = points + i * dim;
        const std::size_t start = i + 1;
        const std::size_t count = n - start;
        const std::size_t count4 = count & ~std::size_t(3);
        __m256d row = _mm256_setzero_pd();
        for (std::size_t jj = 0; jj < count4; jj += 4) {
            const double* pj = points + (start + jj) * dim;
            __m256d sq = _mm256_setzero_pd();
            for (std::size_t c = 0; c < dim; ++c) {
                const __m256d col = _mm256_set_pd(pj[3 * dim + c], pj[2 * dim + c],
                                                  pj[dim + c], pj[c]);
                const __m256d d = _mm256_sub_pd(_mm256_set1_pd(pi[c]), col);
                sq = _mm256_add_pd(sq, _mm256_mul_pd(d, d));
            }
            row = _mm256_add_pd(row, _mm256_sqrt_pd(sq));
        }
        double rsum = hsum(row);
        for (std::size_t jj = count4; jj < count; ++jj) {
            const double* pj = points + (start + jj) * dim;
            double sq = 0.0;
            for (std::size_t c = 0; c < dim; ++c) {
                const double d = pi[c] - pj[c];
                sq += d * d;
            }
            rsum += __builtin_sqrt(sq);
        }
        total += rsum;
    }
    return 2.0 * total;
}

constexpr Backend kAvx2{dot_rows_avx2, sum_sq_diff_avx2, pairwise_dist_sum_avx2, "avx2"};

} // namespace

const Backend* avx2_backend() noexcept {
    return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
}

} // namespace sw::kernels

#else

#include "sw/kernels.hpp"

namespace sw::kernels {
const Backend* avx2_backend() noexcept { return nullptr; }
} // namespace sw::kernels

#endif
