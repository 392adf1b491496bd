#include "sw/ot1d.hpp"

#include "sw/diagnostics.hpp"
#include "sw/kernels.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

namespace sw {

SortedProjection sorted_projection(const std::vector<double>& values) {
    SortedProjection out;
    out.perm.resize(values.size());
    std::iota(out.perm.begin(), out.perm.end(), std::size_t{0});
    std::stable_sort(out.perm.begin(), out.perm.end(),
                     [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
    out.values.resize(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out.values[i] = values[out.perm[i]];
    return out;
}

double w2_squared_1d(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw SizeError("w2_squared_1d: length mismatch");
    if (a.empty()) throw SizeError("w2_squared_1d: empty input");
    std::vector<double> sa(a), sb(b);
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    return kernels::sum_sq_diff(sa.data(), sb.data(), sa.size()) /
           static_cast<double>(sa.size());
}

namespace {

struct Workspace {
    std::vector<double> pa, pb;
    std::vector<std::uint64_t> scratch;
};

double f_eval_ws(const PointCloud& mu, const PointCloud& nu, const double* theta,
                 Workspace& ws) {
    const std::size_t n = mu.n();
    ws.pa.resize(n);
    ws.pb.resize(n);
    ws.scratch.resize(2 * n);
    kernels::dot_rows(mu.data().data(), n, mu.dim(), theta, ws.pa.data());
    kernels::dot_rows(nu.data().data(), n, nu.dim(), theta, ws.pb.data());
    kernels::radix_sort(ws.pa.data(), n, ws.scratch.data());
    kernels::radix_sort(ws.pb.data(), n, ws.scratch.data());
    return kernels::sum_sq_diff(ws.pa.data(), ws.pb.data(), n) / static_cast<double>(n);
}

void check_balanced(const PointCloud& mu, const PointCloud& nu, std::size_t theta_dim) {
    if (mu.dim() != nu.dim() || mu.dim() != theta_dim)
        throw DimensionError("f_eval: dimension mismatch");
    if (mu.n() != nu.n())
        throw UnbalancedError("f_eval: measures must have equal cardinality");
}

} // namespace

double f_eval(const PointCloud& mu, const PointCloud& nu, const Direction& theta) {
    check_balanced(mu, nu, theta.dim());
    Workspace ws;
    return f_eval_ws(mu, nu, theta.data(), ws);
}

std::vector<double> f_values(const PointCloud& mu, const PointCloud& nu,
                             const DirectionSet& dirs, unsigned threads) {
    check_balanced(mu, nu, dirs.dim());
    const std::size_t m = dirs.size();
    std::vector<double> f(m);
    if (threads <= 1 || m < 64) {
        Workspace ws;
        for (std::size_t j = 0; j < m; ++j) f[j] = f_eval_ws(mu, nu, dirs.row(j), ws);
        return f;
    }
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned nt = std::min(threads, hw);
    const std::size_t chunk = (m + nt - 1) / nt;
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(m, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&, begin, end]() {
            Workspace ws;
            for (std::size_t j = begin; j < end; ++j)
                f[j] = f_eval_ws(mu, nu, dirs.row(j), ws);
        });
    }
    for (auto& th : pool) th.join();
    return f;
}

EstimateResult sw2_estimate(const PointCloud& mu, const PointCloud& nu,
                            const DirectionSet& dirs, unsigned threads) {
    if (dirs.size() < 1) throw SizeError("sw2_estimate: empty DirectionSet");
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> f = f_values(mu, nu, dirs, threads);
    const double m = static_cast<double>(f.size());
    EstimateResult result;
    result.value = kernels::deterministic_sum_sorted(f.data(), f.size()) / m;
    result.m_used = f.size();
    const SamplerSpec& spec = dirs.strategy();
    if (spec.kind == SamplerKind::uniform && spec.randomization == Randomization::none &&
        f.size() >= 2) {
        result.std_error = sigma_hat(f) / std::sqrt(m);
    }
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

double w2_circle_unit(std::vector<double> positions, std::vector<double>* deviations,
                      std::vector<std::size_t>* order) {
    const std::size_t n = positions.size();
    if (n == 0) throw SizeError("w2_circle_unit: empty input");

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t i, std::size_t j) { return positions[i] < positions[j]; });
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = positions[idx[i]];

    const double nn = static_cast<double>(n);
    // atom i of the sorted list is matched, under cyclic shift j, to the
    // uniform quantile arc with midpoint (2i+1)/(2n) + offset; the offset
    // minimum is the mean deviation, so each piece reduces to a variance
    auto target = [&](std::size_t i) { return (2.0 * i + 1.0) / (2.0 * nn); };

    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dlt = x[i] - target(i);
        sum += dlt;
        sum_sq += dlt * dlt;
    }
    double best = sum_sq / nn - (sum / nn) * (sum / nn);
    std::size_t best_shift = 0;

    double cur_sum = sum, cur_sq = sum_sq;
    for (std::size_t j = 1; j < n; ++j) {
        // shift j-1 -> j: every deviation moves up one slot (+1/n), the
        // first leaves, x[j-1]+1 enters at the last slot
        const double old_first = x[j - 1] - target(0);
        const double entering = x[j - 1] + 1.0 - target(n - 1);
        cur_sq = cur_sq - old_first * old_first;
        cur_sum = cur_sum - old_first;
        // remaining n-1 deviations each gain 1/n
        cur_sq += (2.0 / nn) * cur_sum + (nn - 1.0) / (nn * nn);
        cur_sum += (nn - 1.0) / nn;
        cur_sum += entering;
        cur_sq += entering * entering;
        const double var = cur_sq / nn - (cur_sum / nn) * (cur_sum / nn);
        if (var < best) {
            best = var;
            best_shift = j;
        }
    }

    // exact recomputation at the winner removes incremental drift
    std::vector<double> dev(n);
    double s2 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t src = i + best_shift;
        const double lift = (src >= n) ? 1.0 : 0.0;
        dev[i] = x[src % n] + lift - target(i);
        s1 += dev[i];
        s2 += dev[i] * dev[i];
    }
    const double mean = s1 / nn;
    const double var = s2 / nn - mean * mean;
    if (deviations) {
        for (auto& v : dev) v -= mean;
        *deviations = std::move(dev);
    }
    if (order) {
        // order[i] = original index of the atom occupying sorted slot i
        order->resize(n);
        for (std::size_t i = 0; i < n; ++i) (*order)[i] = idx[(i + best_shift) % n];
    }
    return std::max(var, 0.0) + 1.0 / (12.0 * nn * nn);
}

double w2_squared_circle_to_uniform(const std::vector<double>& angles) {
    const double two_pi = 2.0 * M_PI;
    std::vector<double> pos(angles.size());
    for (std::size_t i = 0; i < angles.size(); ++i) {
        double a = std::fmod(angles[i], two_pi);
        if (a < 0.0) a += two_pi;
        pos[i] = a / two_pi;
    }
    return two_pi * two_pi * w2_circle_unit(std::move(pos), nullptr, nullptr);
}

} // namespace sw
