#include "sw/harness.hpp"

#include "sw/control_variates.hpp"
#include "sw/io.hpp"
#include "sw/samplers_lds.hpp"
#include "sw/samplers_pointsets.hpp"
#include "sw/samplers_random.hpp"
#include "sw/sphere.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>

namespace sw {

std::string StrategyChoice::label() const {
    if (shcv) {
        std::string s = "shcv";
        if (shcv_degree >= 0) s += ",degree=" + std::to_string(shcv_degree);
        return s;
    }
    return spec.to_string();
}

StrategyChoice StrategyChoice::parse(const std::string& text) {
    StrategyChoice choice;
    if (text.rfind("shcv", 0) == 0) {
        choice.shcv = true;
        auto comma = text.find(',');
        while (comma != std::string::npos) {
            const auto next = text.find(',', comma + 1);
            const std::string item = text.substr(comma + 1, next - comma - 1);
            const auto eq = item.find('=');
            if (eq == std::string::npos) throw ConfigError("bad shcv parameter: " + item);
            const std::string key = item.substr(0, eq);
            if (key == "degree")
                choice.shcv_degree = std::stoi(item.substr(eq + 1));
            else
                throw ConfigError("unknown shcv parameter: " + key);
            comma = next;
        }
        return choice;
    }
    choice.spec = SamplerSpec::parse(text);
    return choice;
}

void ExperimentConfig::validate() const {
    if (dims.empty()) throw ConfigError("config: dims is empty");
    if (m_schedule.empty()) throw ConfigError("config: m_schedule is empty");
    for (std::size_t i = 1; i < m_schedule.size(); ++i)
        if (m_schedule[i] <= m_schedule[i - 1])
            throw ConfigError("config: m_schedule must be strictly increasing");
    if (strategies.empty()) throw ConfigError("config: strategies is empty");
    if (seeds.empty()) throw ConfigError("config: seeds is empty");
}

std::pair<PointCloud, PointCloud> gen_gaussian_pair(std::size_t d, std::size_t n, Rng& rng) {
    if (d < 2) throw InvalidDimension("gen_gaussian_pair: d must be >= 2");
    if (n < 1) throw SizeError("gen_gaussian_pair: n must be >= 1");

    auto draw_mean = [&](std::vector<double>& mean) {
        mean = gaussian_vector(d, rng);
        for (double& v : mean) v += 1.0;
    };
    std::vector<double> mean_x, mean_y;
    draw_mean(mean_x);
    draw_mean(mean_y);
    const std::vector<double> sigma_x = gaussian_vector(d * d, rng);
    const std::vector<double> sigma_y = gaussian_vector(d * d, rng);

    auto sample_cloud = [&](const std::vector<double>& mean,
                            const std::vector<double>& sigma) {
        PointCloud cloud(n, d);
        for (std::size_t k = 0; k < n; ++k) {
            const std::vector<double> z = gaussian_vector(d, rng);
            double* row = cloud.row(k);
            for (std::size_t i = 0; i < d; ++i) {
                double acc = mean[i];
                for (std::size_t j = 0; j < d; ++j) acc += sigma[i * d + j] * z[j];
                row[i] = acc;
            }
        }
        return cloud;
    };
    PointCloud mu = sample_cloud(mean_x, sigma_x);
    PointCloud nu = sample_cloud(mean_y, sigma_y);
    return {std::move(mu), std::move(nu)};
}

std::tuple<PointCloud, PointCloud, double> two_dirac_case() {
    PointCloud mu(std::vector<double>{1, 0, 0, 0, -1, 0}, 3);
    PointCloud nu(std::vector<double>{0, 0, 1, 0, 0, -1}, 3);
    const double value = 2.0 * (M_PI - std::sqrt(2.0)) / (3.0 * M_PI);
    return {std::move(mu), std::move(nu), value};
}

EstimateResult reference_value(const PointCloud& mu, const PointCloud& nu,
                               const ReferenceProtocol& protocol, unsigned threads) {
    if (protocol.kind == ReferenceProtocol::Kind::analytic_two_dirac) {
        EstimateResult r;
        r.value = std::get<2>(two_dirac_case());
        r.m_used = 0;
        return r;
    }
    Rng rng(kReferenceSeed);
    const DirectionSet dirs = sample_uniform(protocol.m_ref, mu.dim(), rng);
    return sw2_estimate(mu, nu, dirs, threads);
}

std::pair<PointCloud, PointCloud> augment_diagrams(const std::vector<double>& d1,
                                                   const std::vector<double>& d2) {
    if (d1.size() % 2 || d2.size() % 2)
        throw DiagramError("augment_diagrams: diagrams are flat (birth, death) lists");
    const std::size_t n1 = d1.size() / 2;
    const std::size_t n2 = d2.size() / 2;
    if (n1 + n2 == 0) throw DiagramError("augment_diagrams: both diagrams empty");
    auto check = [](const std::vector<double>& d) {
        for (std::size_t k = 0; k + 1 < d.size(); k += 2)
            if (d[k + 1] < d[k])
                throw DiagramError("augment_diagrams: death before birth");
    };
    check(d1);
    check(d2);

    auto diagonal = [](const std::vector<double>& d, std::vector<double>& out) {
        for (std::size_t k = 0; k + 1 < d.size(); k += 2) {
            const double mid = 0.5 * (d[k] + d[k + 1]);
            out.push_back(mid);
            out.push_back(mid);
        }
    };
    std::vector<double> mu_data(d1);
    diagonal(d2, mu_data);
    std::vector<double> nu_data(d2);
    diagonal(d1, nu_data);
    return {PointCloud(std::move(mu_data), 2), PointCloud(std::move(nu_data), 2)};
}

DirectionSet make_directions(const SamplerSpec& spec, std::size_t m, std::size_t d,
                             std::uint64_t seed) {
    spec.validate(d);
    Rng rng(seed);
    DirectionSet dirs = [&]() -> DirectionSet {
        switch (spec.kind) {
            case SamplerKind::uniform:
                return sample_uniform(m, d, rng);
            case SamplerKind::orthonormal:
                return sample_orthonormal(m, d, rng);
            case SamplerKind::halton:
            case SamplerKind::sobol: {
                std::size_t d_cube = d;
                if (spec.mapping == SphereMapping::equal_area)
                    d_cube = 2;
                else if (spec.mapping == SphereMapping::spherical_coords)
                    d_cube = d - 1;
                CubePointSet cube = spec.kind == SamplerKind::halton
                                        ? halton(m, d_cube)
                                        : sobol(m, d_cube);
                if (spec.randomization == Randomization::shift)
                    cube = randomize_shift(cube, rng);
                return map_to_sphere(cube, spec.mapping);
            }
            case SamplerKind::fibonacci:
                return fibonacci_sphere(m, spec.param("literal", 0.0) != 0.0);
            case SamplerKind::riesz: {
                if (d == 2) {
                    // Fekete points on the circle are exactly the M-th roots
                    return unit_circle_grid(m);
                }
                RieszOptions opt;
                opt.s = spec.param("s", 0.1);
                opt.iterations = static_cast<std::size_t>(spec.param("T", 10.0));
                opt.step = spec.param("step", 1.0);
                opt.backtrack = spec.param("backtrack", 0.0) != 0.0;
                return riesz_minimize(m, d, opt, rng).first;
            }
            case SamplerKind::ssw: {
                SswOptions opt;
                opt.circles = static_cast<std::size_t>(spec.param("L", 500.0));
                opt.iterations = static_cast<std::size_t>(spec.param("T", 250.0));
                opt.learning_rate = spec.param("lr", 150.0);
                return ssw_minimize(m, d, opt, rng).first;
            }
        }
        throw ConfigError("make_directions: unknown kind");
    }();

    if (spec.randomization == Randomization::rotation)
        dirs = randomize_rotation(dirs, rng);
    dirs.strategy() = spec;
    dirs.set_seed(seed);
    return dirs;
}

EstimateResult estimate_with_strategy(const StrategyChoice& strategy, const PointCloud& mu,
                                      const PointCloud& nu, std::size_t m, std::uint64_t seed,
                                      unsigned threads, const DirectionSet* cached) {
    const auto t0 = std::chrono::steady_clock::now();
    EstimateResult result;
    if (strategy.shcv) {
        Rng rng(seed);
        ShcvOptions opt;
        opt.degree = strategy.shcv_degree;
        opt.threads = threads;
        result = shcv_estimate(mu, nu, m, rng, opt);
    } else if (cached) {
        result = sw2_estimate(mu, nu, *cached, threads);
    } else {
        const DirectionSet dirs = make_directions(strategy.spec, m, mu.dim(), seed);
        result = sw2_estimate(mu, nu, dirs, threads);
    }
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

std::vector<double> distance_matrix(const std::vector<PointCloud>& clouds,
                                    const DirectionSet& dirs, unsigned threads,
                                    bool diagram_mode) {
    const std::size_t n = clouds.size();
    if (n == 0) throw SizeError("distance_matrix: no clouds");
    for (const auto& c : clouds)
        if (c.dim() != clouds.front().dim())
            throw DimensionError("distance_matrix: clouds have mixed dimensions");

    std::vector<double> matrix(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double value;
            if (diagram_mode) {
                if (clouds[i].dim() != 2)
                    throw DiagramError("distance_matrix: diagram mode needs 2D clouds");
                auto [mu, nu] = augment_diagrams(clouds[i].data(), clouds[j].data());
                value = sw2_estimate(mu, nu, dirs, threads).value;
            } else {
                if (clouds[i].n() != clouds[j].n())
                    throw UnbalancedError(
                        "distance_matrix: unequal cloud sizes (use diagram mode)");
                value = sw2_estimate(clouds[i], clouds[j], dirs, threads).value;
            }
            matrix[i * n + j] = value;
            matrix[j * n + i] = value;
        }
    }
    return matrix;
}

std::vector<ConvergenceRecord> convergence_sweep(const ExperimentConfig& config) {
    config.validate();
    std::vector<ConvergenceRecord> records;

    for (std::size_t d : config.dims) {
        Rng data_rng(config.data_seed ^ (0x0Dull << 56) ^ d);
        const auto [mu, nu] = gen_gaussian_pair(d, config.n_points, data_rng);
        const EstimateResult ref = reference_value(mu, nu, config.reference, config.threads);

        for (const auto& strategy : config.strategies) {
            std::vector<ConvergenceRecord> file_records;
            for (std::size_t m : config.m_schedule) {
                std::unique_ptr<DirectionSet> cached;
                if (config.amortized && !strategy.shcv) {
                    try {
                        cached = std::make_unique<DirectionSet>(
                            make_directions(strategy.spec, m, d, config.seeds.front()));
                    } catch (const std::exception& e) {
                        std::cerr << "warning: skipping " << strategy.label() << " d=" << d
                                  << " M=" << m << ": " << e.what() << "\n";
                        continue;
                    }
                }
                for (std::uint64_t seed : config.seeds) {
                    ConvergenceRecord rec;
                    rec.strategy = strategy;
                    rec.dim = d;
                    rec.m = m;
                    rec.seed = seed;
                    try {
                        const EstimateResult est = estimate_with_strategy(
                            strategy, mu, nu, m, seed, config.threads, cached.get());
                        rec.error = std::abs(est.value - ref.value);
                        if (config.relative_error && ref.value != 0.0)
                            rec.error /= std::abs(ref.value);
                        rec.seconds = est.wall_time;
                    } catch (const std::exception& e) {
                        std::cerr << "warning: skipping " << strategy.label() << " d=" << d
                                  << " M=" << m << " seed=" << seed << ": " << e.what()
                                  << "\n";
                        continue;
                    }
                    records.push_back(rec);
                    file_records.push_back(rec);
                }
            }
            if (!config.out_dir.empty() && !file_records.empty()) {
                std::filesystem::create_directories(config.out_dir);
                std::string name = strategy.label();
                for (char& c : name)
                    if (c == ':' || c == '+' || c == ',' || c == '=') c = '_';
                write_records_csv(config.out_dir + "/" + name + "_d" + std::to_string(d) +
                                      ".csv",
                                  file_records);
            }
        }
    }
    return records;
}

} // namespace sw
