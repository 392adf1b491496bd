#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

// Data-parallel inner loops shared by the estimators and diagnostics.
// Scalar reference implementations always exist; an AVX2 variant is
// selected at runtime when the CPU supports it. Set SW_KERNELS=scalar
// (or =avx2) in the environment to force a backend before first use.
namespace sw::kernels {

struct Backend {
    // out[k] = <points[k*dim .. ], theta>, k = 0..n-1
    void (*dot_rows)(const double* points, std::size_t n, std::size_t dim,
                     const double* theta, double* out);
    // sum over i of (a[i]-b[i])^2
    double (*sum_sq_diff)(const double* a, const double* b, std::size_t n);
    // sum over ordered pairs i != j of ||p_i - p_j|| (row-major n x dim)
    double (*pairwise_dist_sum)(const double* points, std::size_t n, std::size_t dim);

    const char* name;
};

// active backend (initialized on first call; thread-safe)
const Backend& active();

// explicitly select "scalar" or "avx2"; throws std::runtime_error if the
// requested backend is unavailable on this CPU
void select(const std::string& name);

const Backend& scalar_backend() noexcept;
const Backend* avx2_backend() noexcept; // nullptr when unsupported

inline void dot_rows(const double* points, std::size_t n, std::size_t dim,
                     const double* theta, double* out) {
    active().dot_rows(points, n, dim, theta, out);
}
inline double sum_sq_diff(const double* a, const double* b, std::size_t n) {
    return active().sum_sq_diff(a, b, n);
}
inline double pairwise_dist_sum(const double* points, std::size_t n, std::size_t dim) {
    return active().pairwise_dist_sum(points, n, dim);
}

// Ascending in-place sort via LSD radix passes on the order-preserving
// u64 key image. Data-independent branch structure: unlike introsort its
// cost does not degrade on unpredictable inputs, which dominates the
// per-direction cost of the estimator. scratch must hold >= 2*n u64.
void radix_sort(double* values, std::size_t n, std::uint64_t* scratch);

// Deterministic reduction: fixed 1024-element chunks, pairwise tree inside
// each chunk and across chunk sums. Result does not depend on thread count
// (it is a pure function of the value sequence).
double deterministic_sum(const double* values, std::size_t n);

// deterministic_sum of the ascending-sorted values: additionally invariant
// to any permutation of the input
double deterministic_sum_sorted(const double* values, std::size_t n);

} // namespace sw::kernels
