#include "sw/diagnostics.hpp"
#include "sw/samplers_lds.hpp"
#include "sw/samplers_pointsets.hpp"
#include "sw/samplers_random.hpp"
#include "sw/sphere.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace sw;

TEST_CASE("fibonacci: literal formula stays on the northern hemisphere") {
    const std::size_t m = 64;
    const DirectionSet lit = fibonacci_sphere(m, true);
    CHECK(lit(0, 0) == doctest::Approx(1.0)); // m=0: polar angle pi/2, azimuth 0
    CHECK(lit(0, 1) == doctest::Approx(0.0));
    CHECK(lit(0, 2) == doctest::Approx(0.0));
    const double z_max = 2.0 * (m - 1.0) / (2.0 * m + 1.0);
    for (std::size_t k = 0; k < m; ++k) {
        CHECK(lit(k, 2) >= -1e-15);
        CHECK(lit(k, 2) <= z_max + 1e-15);
    }
    CHECK_NOTHROW(lit.check_unit_norms());
}

TEST_CASE("fibonacci: default spiral covers both hemispheres") {
    const DirectionSet fib = fibonacci_sphere(101);
    CHECK_NOTHROW(fib.check_unit_norms());
    std::size_t north = 0, south = 0;
    for (std::size_t k = 0; k < fib.size(); ++k) (fib(k, 2) > 0 ? north : south)++;
    CHECK(north > 40);
    CHECK(south > 40);
}

TEST_CASE("fibonacci beats uniform cap-L2 discrepancy by a wide margin") {
    const double fib = cap_l2_discrepancy(fibonacci_sphere(500));
    std::vector<double> uniform_vals;
    for (int s = 0; s < 20; ++s) {
        Rng rng(300 + s);
        uniform_vals.push_back(cap_l2_discrepancy(sample_uniform(500, 3, rng)));
    }
    std::sort(uniform_vals.begin(), uniform_vals.end());
    CHECK(fib * 2.0 < uniform_vals[10]);
}

TEST_CASE("unit_circle_grid: equal gaps") {
    const DirectionSet grid = unit_circle_grid(8);
    CHECK(grid.dim() == 2);
    CHECK(grid(0, 0) == doctest::Approx(1.0));
    CHECK_NOTHROW(grid.check_unit_norms());
}

TEST_CASE("riesz_energy: frozen values and singularities") {
    // two antipodal points on the circle, s = 1: distance 2, two ordered pairs
    DirectionSet two(2, 2, SamplerSpec{}, std::nullopt);
    two(0, 0) = 1.0;
    two(1, 0) = -1.0;
    CHECK(riesz_energy(two, 1.0) == doctest::Approx(1.0));

    DirectionSet same(2, 2, SamplerSpec{}, std::nullopt);
    same(0, 0) = 1.0;
    same(1, 0) = 1.0;
    CHECK_THROWS_AS(riesz_energy(same, 1.0), SingularConfiguration);
    CHECK_THROWS_AS(riesz_energy(same, 0.0), SingularConfiguration);

    // 4th roots of unity, s = 0: eight ordered pairs at sqrt(2), four at 2,
    // so the energy is -(8 log sqrt(2) + 4 log 2) = -8 log 2
    const DirectionSet roots = unit_circle_grid(4);
    CHECK(riesz_energy(roots, 0.0) == doctest::Approx(-8.0 * std::log(2.0)).epsilon(1e-12));

    // s < 0 is the negated maximization objective
    CHECK(riesz_energy(two, -1.0) == doctest::Approx(-4.0));
}

TEST_CASE("riesz_energy is rotation invariant") {
    Rng rng(83);
    const DirectionSet pts = sample_uniform(60, 4, rng);
    const double before = riesz_energy(pts, 0.1);
    Rng rot(89);
    const double after = riesz_energy(randomize_rotation(pts, rot), 0.1);
    CHECK(after == doctest::Approx(before).epsilon(1e-9));
}

TEST_CASE("riesz_minimize: circle Fekete points are the roots of unity") {
    Rng rng(5);
    RieszOptions opt;
    opt.iterations = 200;
    auto [pts, trace] = riesz_minimize(8, 2, opt, rng);
    std::vector<double> angles;
    for (std::size_t i = 0; i < 8; ++i) angles.push_back(std::atan2(pts(i, 1), pts(i, 0)));
    std::sort(angles.begin(), angles.end());
    for (std::size_t i = 0; i < 8; ++i) {
        const double gap = (i + 1 < 8) ? angles[i + 1] - angles[i]
                                       : angles[0] + 2.0 * M_PI - angles[7];
        CHECK(std::abs(gap - M_PI / 4.0) < 1e-3);
    }
    CHECK(trace.iterations == 200);
}

TEST_CASE("riesz_minimize: monotone descent with backtracking") {
    Rng rng(97);
    RieszOptions opt;
    opt.backtrack = true;
    opt.iterations = 30;
    auto [pts, trace] = riesz_minimize(100, 3, opt, rng);
    for (std::size_t i = 1; i < trace.objective_per_iter.size(); ++i)
        CHECK(trace.objective_per_iter[i] <= trace.objective_per_iter[i - 1] + 1e-9);
}

TEST_CASE("riesz_minimize: defaults improve the uniform initialization") {
    Rng rng(7);
    const DirectionSet init = sample_uniform(500, 3, rng);
    const double before = cap_l2_discrepancy(init);
    RieszOptions opt; // s=0.1, T=10, step=1
    Rng rng2(7);
    auto [pts, trace] = riesz_minimize(500, 3, opt, rng2, &init);
    CHECK(cap_l2_discrepancy(pts) < before);
    CHECK_NOTHROW(pts.check_unit_norms(1e-9));
}

TEST_CASE("ssw_minimize: rejects low dimensions") {
    Rng rng(1);
    SswOptions opt;
    CHECK_THROWS_AS(ssw_minimize(16, 2, opt, rng), InvalidDimension);
}

TEST_CASE("ssw_minimize: improves cap-L2 discrepancy at least 2x (defaults)") {
    Rng rng(11);
    const DirectionSet init = sample_uniform(500, 3, rng);
    const double before = cap_l2_discrepancy(init);
    SswOptions opt; // T=250, lr=150, L=500
    Rng rng2(11);
    auto [pts, trace] = ssw_minimize(500, 3, opt, rng2, &init);
    CHECK(cap_l2_discrepancy(pts) * 2.0 < before);
    CHECK_NOTHROW(pts.check_unit_norms(1e-9));
    CHECK(trace.objective_per_iter.size() == 250);
}

TEST_CASE("ssw_minimize: smoothed trace is non-increasing (5 seeds)") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        Rng rng(seed);
        SswOptions opt;
        opt.iterations = 100;
        opt.circles = 300;
        auto [pts, trace] = ssw_minimize(300, 3, opt, rng);
        std::vector<double> smoothed;
        for (std::size_t k = 0; k + 10 <= trace.objective_per_iter.size(); ++k) {
            double acc = 0.0;
            for (std::size_t j = k; j < k + 10; ++j) acc += trace.objective_per_iter[j];
            smoothed.push_back(acc / 10.0);
        }
        for (std::size_t k = 1; k < smoothed.size(); ++k)
            CHECK(smoothed[k] <= smoothed[k - 1] * (1.0 + 1e-3));
    }
}

TEST_CASE("ssw_minimize: converged configurations are near-stationary") {
    Rng rng(11);
    SswOptions opt;
    opt.iterations = 150;
    auto [pts, trace] = ssw_minimize(500, 3, opt, rng);

    SswOptions cont;
    cont.iterations = 20;
    Rng rng2(1211);
    auto [pts2, tail] = ssw_minimize(500, 3, cont, rng2, &pts);
    const double two_pi_sq = 4.0 * M_PI * M_PI;
    double mean_delta = 0.0;
    for (std::size_t i = 1; i < tail.objective_per_iter.size(); ++i)
        mean_delta += std::abs(tail.objective_per_iter[i] - tail.objective_per_iter[i - 1]) /
                      two_pi_sq / (tail.objective_per_iter.size() - 1.0);
    CHECK(mean_delta < 1e-6); // unit-circumference objective scale
}

TEST_CASE("great-circle projection is the angular nearest point") {
    Rng rng(101);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t d = 4;
        std::vector<double> e = gaussian_vector(d, rng);
        double en = 0.0;
        for (double v : e) en += v * v;
        for (double& v : e) v /= std::sqrt(en);
        std::vector<double> f = gaussian_vector(d, rng);
        double ef = 0.0;
        for (std::size_t c = 0; c < d; ++c) ef += e[c] * f[c];
        double fn = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
            f[c] -= ef * e[c];
            fn += f[c] * f[c];
        }
        for (double& v : f) v /= std::sqrt(fn);

        const Direction x = gaussian_direction(d, rng);
        const std::vector<double> proj = project_to_great_circle(x.coords(), e, f);

        double pn = 0.0;
        for (double v : proj) pn += v * v;
        CHECK(std::sqrt(pn) == doctest::Approx(1.0).epsilon(1e-12));

        auto geodesic = [&](const std::vector<double>& y) {
            double dot = 0.0;
            for (std::size_t c = 0; c < d; ++c) dot += x[c] * y[c];
            return std::acos(std::clamp(dot, -1.0, 1.0));
        };
        const double best = geodesic(proj);
        for (int g = 0; g < 10000; ++g) {
            const double a = 2.0 * M_PI * g / 10000.0;
            std::vector<double> cand(d);
            for (std::size_t c = 0; c < d; ++c)
                cand[c] = std::cos(a) * e[c] + std::sin(a) * f[c];
            CHECK(geodesic(cand) >= best - 1e-9);
        }
    }
}
