#include "sw/diagnostics.hpp"
#include "sw/harness.hpp"
#include "sw/io.hpp"
#include "sw/samplers_random.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace sw;

TEST_CASE("gen_gaussian_pair: determinism and moments") {
    Rng r1(9), r2(9);
    const auto [a1, b1] = gen_gaussian_pair(3, 100, r1);
    const auto [a2, b2] = gen_gaussian_pair(3, 100, r2);
    CHECK(a1.data() == a2.data());
    CHECK(b1.data() == b2.data());

    // covariance concentration at N = 1e4: rebuild the factors from the
    // same stream to get the target product
    Rng rng(10);
    const std::size_t d = 3, n = 10000;
    std::vector<double> mean_x = gaussian_vector(d, rng);
    for (double& v : mean_x) v += 1.0;
    std::vector<double> mean_y = gaussian_vector(d, rng);
    for (double& v : mean_y) v += 1.0;
    const std::vector<double> sigma_x = gaussian_vector(d * d, rng);
    (void)gaussian_vector(d * d, rng); // sigma_y
    Rng rng_replay(10);
    const auto [mu, nu] = gen_gaussian_pair(d, n, rng_replay);

    std::vector<double> emp_mean(d, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < d; ++j) emp_mean[j] += mu(k, j) / n;
    std::vector<double> cov(d * d, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                cov[i * d + j] += (mu(k, i) - emp_mean[i]) * (mu(k, j) - emp_mean[j]) / n;
    std::vector<double> target(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k)
                target[i * d + j] += sigma_x[i * d + k] * sigma_x[j * d + k];
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d * d; ++i) {
        num += (cov[i] - target[i]) * (cov[i] - target[i]);
        den += target[i] * target[i];
    }
    CHECK(std::sqrt(num / den) < 0.10);

    // per-coordinate mean within 3 sd / sqrt(N)
    for (std::size_t j = 0; j < d; ++j) {
        const double sd = std::sqrt(cov[j * d + j]);
        CHECK(std::abs(emp_mean[j] - mean_x[j]) < 3.0 * sd / std::sqrt(double(n)));
    }
}

TEST_CASE("two_dirac_case: the analytic value") {
    auto [mu, nu, value] = two_dirac_case();
    CHECK(value == doctest::Approx(2.0 * (M_PI - std::sqrt(2.0)) / (3.0 * M_PI)));
    CHECK(mu.n() == 2);
    CHECK(nu.dim() == 3);
}

TEST_CASE("reference_value: analytic branch and self-consistency") {
    auto [mu, nu, value] = two_dirac_case();
    const EstimateResult analytic =
        reference_value(mu, nu, ReferenceProtocol::analytic());
    CHECK(analytic.value == value);

    const EstimateResult same =
        reference_value(mu, mu, ReferenceProtocol::uniform(2000));
    CHECK(same.value == doctest::Approx(0.0));

    Rng data_rng(21);
    const auto [ga, gb] = gen_gaussian_pair(3, 200, data_rng);
    const EstimateResult big = reference_value(ga, gb, ReferenceProtocol::uniform(200000), 2);
    // a second, disjoint uniform run at the same size
    Rng other(kReferenceSeed ^ 0x1234567ull);
    const EstimateResult again =
        sw2_estimate(ga, gb, sample_uniform(200000, 3, other), 2);
    REQUIRE(big.std_error.has_value());
    CHECK(std::abs(big.value - again.value) < 4.0 * *big.std_error * std::sqrt(2.0));
}

TEST_CASE("augment_diagrams: frozen examples and errors") {
    // identical diagrams give identical augmented measures
    auto [m1, n1] = augment_diagrams({0.0, 1.0, 0.5, 2.0}, {0.0, 1.0, 0.5, 2.0});
    Rng rng(23);
    const DirectionSet dirs = sample_uniform(64, 2, rng);
    CHECK(sw2_estimate(m1, n1, dirs).value == doctest::Approx(0.0));

    // one-sided empty diagram
    auto [m2, n2] = augment_diagrams({0.0, 1.0}, {});
    CHECK(m2.n() == 1);
    CHECK(m2(0, 0) == 0.0);
    CHECK(m2(0, 1) == 1.0);
    CHECK(n2.n() == 1);
    CHECK(n2(0, 0) == doctest::Approx(0.5));
    CHECK(n2(0, 1) == doctest::Approx(0.5));

    // hand-computed diagonal projections
    auto [m3, n3] = augment_diagrams({0.0, 2.0}, {0.0, 4.0});
    REQUIRE(m3.n() == 2);
    CHECK(m3(0, 0) == 0.0);
    CHECK(m3(0, 1) == 2.0);
    CHECK(m3(1, 0) == doctest::Approx(2.0));
    CHECK(m3(1, 1) == doctest::Approx(2.0));
    CHECK(n3(0, 0) == 0.0);
    CHECK(n3(0, 1) == 4.0);
    CHECK(n3(1, 0) == doctest::Approx(1.0));
    CHECK(n3(1, 1) == doctest::Approx(1.0));

    CHECK_THROWS_AS(augment_diagrams({1.0, 0.5}, {}), DiagramError);
    CHECK_THROWS_AS(augment_diagrams({}, {}), DiagramError);
}

TEST_CASE("distance_matrix: symmetry, zero diagonal, per-pair reference") {
    Rng data_rng(29);
    std::vector<PointCloud> clouds;
    for (int i = 0; i < 3; ++i)
        clouds.push_back(gen_gaussian_pair(3, 120, data_rng).first);

    Rng rng(31);
    const DirectionSet dirs = sample_uniform(4000, 3, rng);
    const auto matrix = distance_matrix(clouds, dirs, 2);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(matrix[i * 3 + i] == 0.0);
        for (std::size_t j = 0; j < 3; ++j) CHECK(matrix[i * 3 + j] == matrix[j * 3 + i]);
    }

    // identical clouds: zero matrix
    std::vector<PointCloud> same(3, clouds[0]);
    for (double v : distance_matrix(same, dirs)) CHECK(v == doctest::Approx(0.0));

    // each entry against a per-pair uniform reference
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = i + 1; j < 3; ++j) {
            Rng ref_rng(kReferenceSeed);
            const EstimateResult ref =
                sw2_estimate(clouds[i], clouds[j], sample_uniform(100000, 3, ref_rng), 2);
            REQUIRE(ref.std_error.has_value());
            // both are MC estimates; compare with combined uncertainty
            const double combined =
                std::sqrt(*ref.std_error * *ref.std_error * (1.0 + 100000.0 / 4000.0));
            CHECK(std::abs(matrix[i * 3 + j] - ref.value) < 3.0 * combined);
        }
}

TEST_CASE("swds cache: bit-exact round trip") {
    Rng rng(37);
    DirectionSet dirs = sample_uniform(50, 4, rng);
    dirs.strategy().hyperparams["s"] = 0.25;
    const std::string path = "test_dirs.swds";
    write_direction_set(path, dirs);
    const DirectionSet back = read_direction_set(path);
    CHECK(back.size() == dirs.size());
    CHECK(back.dim() == dirs.dim());
    CHECK(back.data() == dirs.data()); // bit-identical payload
    CHECK(back.strategy() == dirs.strategy());
    CHECK(back.seed() == dirs.seed());
    std::remove(path.c_str());

    CHECK_THROWS_AS(read_direction_set("missing_file.swds"), DataError);
}

TEST_CASE("point cloud csv: round trip with headers") {
    const std::string path = "test_cloud.csv";
    {
        std::ofstream out(path);
        out << "# generated test cloud\n";
        out << "0.25,1.5\n-1.0,2.0\n";
    }
    const PointCloud cloud = read_point_cloud_csv(path);
    CHECK(cloud.n() == 2);
    CHECK(cloud.dim() == 2);
    CHECK(cloud(1, 0) == -1.0);
    write_point_cloud_csv(path, cloud);
    const PointCloud again = read_point_cloud_csv(path);
    CHECK(again.data() == cloud.data());
    std::remove(path.c_str());
}

TEST_CASE("records csv: round trip") {
    std::vector<ConvergenceRecord> records(3);
    records[0].m = 100;
    records[0].error = 0.125;
    records[0].seconds = 0.5;
    records[1].m = 300;
    records[1].error = 0.0625;
    records[1].seconds = 1.25;
    records[2].m = 900;
    records[2].error = 0.03125;
    records[2].seconds = 4.0;
    const std::string path = "test_records.csv";
    write_records_csv(path, records);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "N_sample,Error,Timers");
    in.close();

    const auto back = read_records_csv(path);
    REQUIRE(back.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back[i].m == records[i].m);
        CHECK(back[i].error == records[i].error);
        CHECK(back[i].seconds == records[i].seconds);
    }
    std::remove(path.c_str());
}

TEST_CASE("convergence_sweep: records, csv files and skipped strategies") {
    ExperimentConfig config;
    config.dims = {2, 3};
    config.m_schedule = {16, 64};
    config.strategies = {StrategyChoice::parse("uniform"),
                         StrategyChoice::parse("fibonacci")}; // invalid in d=2
    config.seeds = {1, 2, 3};
    config.reference = ReferenceProtocol::uniform(5000);
    config.n_points = 50;
    config.out_dir = "test_sweep_out";

    const auto records = convergence_sweep(config);
    // uniform: 2 dims x 2 m x 3 seeds; fibonacci only valid in d=3
    std::size_t uniform_rows = 0, fib_rows = 0;
    for (const auto& rec : records)
        (rec.strategy.spec.kind == SamplerKind::uniform ? uniform_rows : fib_rows)++;
    CHECK(uniform_rows == 12);
    CHECK(fib_rows == 6);

    const auto back = read_records_csv("test_sweep_out/uniform_d3.csv");
    CHECK(back.size() == 6);
    for (const auto& rec : back) CHECK(rec.error >= 0.0);

    std::filesystem::remove_all("test_sweep_out");
}

TEST_CASE("uniform sweep in d=5 shows the dimension-free MC rate") {
    ExperimentConfig config;
    config.dims = {5};
    config.m_schedule = {100, 316, 1000, 3162};
    config.strategies = {StrategyChoice::parse("uniform")};
    for (std::uint64_t s = 1; s <= 20; ++s) config.seeds.push_back(s);
    config.reference = ReferenceProtocol::uniform(500000);
    config.n_points = 200;
    config.threads = 2;

    const auto records = convergence_sweep(config);
    REQUIRE(records.size() == 4 * 20);

    std::vector<std::pair<double, double>> averaged;
    for (std::size_t m : config.m_schedule) {
        double acc = 0.0;
        int count = 0;
        for (const auto& rec : records)
            if (rec.m == m) {
                acc += rec.error;
                ++count;
            }
        averaged.push_back({static_cast<double>(m), acc / count});
    }
    const SlopeFit fit = fit_loglog_slope(averaged);
    CHECK(fit.slope >= -0.65);
    CHECK(fit.slope <= -0.35);

    // wall times grow with M (median over seeds)
    std::vector<double> med_seconds;
    for (std::size_t m : config.m_schedule) {
        std::vector<double> secs;
        for (const auto& rec : records)
            if (rec.m == m) secs.push_back(rec.seconds);
        std::sort(secs.begin(), secs.end());
        med_seconds.push_back(secs[secs.size() / 2]);
    }
    for (std::size_t i = 1; i < med_seconds.size(); ++i)
        CHECK(med_seconds[i] >= med_seconds[i - 1]);
}

TEST_CASE("cached direction set reproduces sweep errors") {
    Rng data_rng(41);
    const auto [mu, nu] = gen_gaussian_pair(3, 80, data_rng);
    const StrategyChoice strategy = StrategyChoice::parse("sobol:equal_area");

    const EstimateResult direct = estimate_with_strategy(strategy, mu, nu, 128, 5, 1);
    const DirectionSet cached = make_directions(strategy.spec, 128, 3, 5);
    const std::string path = "test_cache.swds";
    write_direction_set(path, cached);
    const DirectionSet loaded = read_direction_set(path);
    const EstimateResult replay = estimate_with_strategy(strategy, mu, nu, 128, 5, 1, &loaded);
    CHECK(replay.value == direct.value); // identical set, identical reduction
    std::remove(path.c_str());
}

TEST_CASE("strategy labels parse back to themselves") {
    for (const char* text : {"uniform", "orthonormal", "halton:normalize+shift",
                             "sobol:equal_area", "riesz,s=0.5", "shcv,degree=3"}) {
        const StrategyChoice choice = StrategyChoice::parse(text);
        const StrategyChoice again = StrategyChoice::parse(choice.label());
        CHECK(again.label() == choice.label());
    }
    CHECK_THROWS_AS(StrategyChoice::parse("nonsense"), ConfigError);
}

TEST_CASE("experiment config parser") {
    const std::string path = "test_config.txt";
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "dims = 3, 5\n";
        out << "m_schedule = 100, 300, 1000\n";
        out << "strategies = uniform; sobol:normalize+shift; shcv,degree=2\n";
        out << "seed_range = 1:20\n";
        out << "reference = big_uniform:500000\n";
        out << "n_points = 500\n";
        out << "relative_error = false\n";
        out << "threads = 2\n";
    }
    const ExperimentConfig config = parse_experiment_config(path);
    CHECK(config.dims == std::vector<std::size_t>{3, 5});
    CHECK(config.m_schedule.size() == 3);
    CHECK(config.strategies.size() == 3);
    CHECK(config.strategies[2].shcv);
    CHECK(config.seeds.size() == 20);
    CHECK(config.reference.m_ref == 500000);
    CHECK(config.n_points == 500);
    std::remove(path.c_str());

    {
        std::ofstream out(path);
        out << "m_schedule = 100, 50\n"; // not increasing
        out << "dims = 3\nstrategies = uniform\nseeds = 1\n";
    }
    CHECK_THROWS_AS(parse_experiment_config(path), ConfigError);
    std::remove(path.c_str());
}
