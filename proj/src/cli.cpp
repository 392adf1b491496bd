#include "sw/cli.hpp"

#include "sw/control_variates.hpp"
#include "sw/diagnostics.hpp"
#include "sw/harness.hpp"
#include "sw/io.hpp"
#include "sw/kernels.hpp"
#include "sw/samplers_lds.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>

namespace sw {

namespace {

void print_estimate(const EstimateResult& r) {
    std::cout << std::setprecision(12);
    std::cout << "value " << r.value << "\n";
    if (r.std_error) std::cout << "std_error " << *r.std_error << "\n";
    std::cout << "m " << r.m_used << "\n";
    std::cout << "seconds " << r.wall_time << "\n";
}

} // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"sliced Wasserstein estimation with pluggable sphere sampling"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    unsigned threads = 1;
    std::string out;
    std::string sobol_table;
    app.add_option("--seed", seed, "random seed");
    app.add_option("--threads", threads, "worker threads for estimation");
    app.add_option("--out", out, "output path");
    app.add_option("--sobol-table", sobol_table, "Sobol direction-number table file");

    // generate
    auto* generate = app.add_subcommand("generate", "build and cache a direction set");
    std::string gen_strategy = "uniform";
    std::size_t gen_m = 100, gen_dim = 3;
    bool fibonacci_literal = false, riesz_backtrack = false;
    generate->add_option("--kind,--strategy", gen_strategy,
                         "sampler strategy, e.g. uniform, sobol:equal_area+shift, riesz,s=0.1");
    generate->add_option("--m", gen_m, "number of directions")->required();
    generate->add_option("--dim", gen_dim, "ambient dimension");
    generate->add_flag("--fibonacci-literal", fibonacci_literal,
                       "one-sided Fibonacci spiral variant");
    generate->add_flag("--riesz-backtrack", riesz_backtrack,
                       "halve the Riesz step on energy increase");

    // estimate
    auto* estimate = app.add_subcommand("estimate", "estimate SW2^2 between two point clouds");
    std::string mu_path, nu_path, dirs_path, est_strategy = "uniform";
    std::size_t est_m = 1000;
    int degree = -1;
    estimate->add_option("--mu", mu_path, "first point-cloud CSV")->required();
    estimate->add_option("--nu", nu_path, "second point-cloud CSV")->required();
    estimate->add_option("--dirs", dirs_path, "cached direction-set file");
    estimate->add_option("--strategy", est_strategy, "sampler strategy or 'shcv'");
    estimate->add_option("--m", est_m, "number of directions");
    estimate->add_option("--degree", degree, "control-variate degree (shcv)");

    // bench
    auto* bench = app.add_subcommand("bench", "convergence sweep from a config file");
    std::string config_path;
    bool relative = false;
    bench->add_option("--config", config_path, "experiment config file")->required();
    bench->add_flag("--relative", relative, "report errors relative to the reference");

    // discrepancy
    auto* discrepancy = app.add_subcommand("discrepancy", "uniformity diagnostics");
    std::string disc_metric = "capl2", disc_dirs, disc_strategy, disc_cube;
    std::size_t disc_m = 256, disc_dim = 3, disc_caps = 10000;
    std::string emit_constants;
    discrepancy->add_option("--metric", disc_metric, "star | capl2 | capmax");
    discrepancy->add_option("--dirs", disc_dirs, "cached direction-set file");
    discrepancy->add_option("--strategy", disc_strategy, "sampler strategy to generate");
    discrepancy->add_option("--cube", disc_cube, "halton | sobol (star metric)");
    discrepancy->add_option("--m", disc_m, "points");
    discrepancy->add_option("--dim", disc_dim, "dimension");
    discrepancy->add_option("--caps", disc_caps, "random caps for capmax");
    discrepancy->add_option("--emit-constants", emit_constants,
                            "write stolarsky_constants.txt to this path");

    // distmat
    auto* distmat = app.add_subcommand("distmat", "pairwise SW2^2 matrix");
    std::vector<std::string> cloud_paths;
    std::string dm_dirs, dm_strategy = "uniform";
    std::size_t dm_m = 1000;
    bool diagrams = false;
    distmat->add_option("--clouds", cloud_paths, "point-cloud CSV files")->required();
    distmat->add_option("--dirs", dm_dirs, "cached direction-set file");
    distmat->add_option("--strategy", dm_strategy, "sampler strategy");
    distmat->add_option("--m", dm_m, "number of directions");
    distmat->add_flag("--diagrams", diagrams, "treat clouds as persistence diagrams");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!sobol_table.empty()) setenv("SW_SOBOL_TABLE", sobol_table.c_str(), 1);

        if (*generate) {
            SamplerSpec spec = SamplerSpec::parse(gen_strategy);
            if (fibonacci_literal) spec.hyperparams["literal"] = 1.0;
            if (riesz_backtrack) spec.hyperparams["backtrack"] = 1.0;
            const DirectionSet dirs = make_directions(spec, gen_m, gen_dim, seed);
            if (out.empty()) throw ConfigError("generate: --out is required");
            write_direction_set(out, dirs);
            std::cout << "wrote " << dirs.size() << " directions (dim " << dirs.dim()
                      << ") to " << out << "\n";
        } else if (*estimate) {
            const PointCloud mu = read_point_cloud_csv(mu_path);
            const PointCloud nu = read_point_cloud_csv(nu_path);
            EstimateResult result;
            if (!dirs_path.empty()) {
                const DirectionSet dirs = read_direction_set(dirs_path);
                result = sw2_estimate(mu, nu, dirs, threads);
            } else {
                StrategyChoice strategy = StrategyChoice::parse(est_strategy);
                if (degree >= 0) {
                    if (!strategy.shcv)
                        throw ConfigError("--degree applies to the shcv strategy");
                    strategy.shcv_degree = degree;
                }
                result = estimate_with_strategy(strategy, mu, nu, est_m, seed, threads);
            }
            print_estimate(result);
        } else if (*bench) {
            ExperimentConfig config = parse_experiment_config(config_path);
            if (!out.empty()) config.out_dir = out;
            if (threads > 1) config.threads = threads;
            if (relative) config.relative_error = true;
            const auto records = convergence_sweep(config);
            std::cout << "recorded " << records.size() << " sweep cells";
            if (!config.out_dir.empty()) std::cout << " under " << config.out_dir;
            std::cout << "\n";
        } else if (*discrepancy) {
            if (!emit_constants.empty()) {
                write_stolarsky_constants(emit_constants, {2, 3, 5, 10, 20, 50});
                std::cout << "wrote " << emit_constants << "\n";
            }
            const bool metric_requested =
                !disc_dirs.empty() || !disc_strategy.empty() || !disc_cube.empty();
            if (!metric_requested && !emit_constants.empty()) {
                // constants-only invocation
            } else if (disc_metric == "star") {
                if (disc_cube.empty())
                    throw ConfigError("star metric needs --cube halton|sobol");
                const CubePointSet cube = disc_cube == "halton" ? halton(disc_m, disc_dim)
                                          : disc_cube == "sobol"
                                              ? sobol(disc_m, disc_dim)
                                              : throw ConfigError("unknown cube generator");
                const StarDiscrepancy star = star_discrepancy(cube);
                std::cout << "star " << std::setprecision(12) << star.value
                          << (star.exact ? "" : " (grid upper bound)") << "\n";
            } else if (disc_metric == "capl2" || disc_metric == "capmax") {
                DirectionSet dirs = [&] {
                    if (!disc_dirs.empty()) return read_direction_set(disc_dirs);
                    if (disc_strategy.empty())
                        throw ConfigError("need --dirs or --strategy");
                    return make_directions(SamplerSpec::parse(disc_strategy), disc_m,
                                           disc_dim, seed);
                }();
                if (disc_metric == "capl2") {
                    std::cout << "cap_l2_squared " << std::setprecision(12)
                              << cap_l2_discrepancy(dirs) << "\n";
                } else {
                    Rng rng(seed);
                    std::cout << "cap_max_lower_bound " << std::setprecision(12)
                              << cap_max_discrepancy_approx(dirs, disc_caps, rng) << "\n";
                }
            } else if (emit_constants.empty()) {
                throw ConfigError("unknown metric: " + disc_metric);
            }
        } else if (*distmat) {
            std::vector<PointCloud> clouds;
            clouds.reserve(cloud_paths.size());
            for (const auto& p : cloud_paths) clouds.push_back(read_point_cloud_csv(p));
            const DirectionSet dirs =
                !dm_dirs.empty()
                    ? read_direction_set(dm_dirs)
                    : make_directions(SamplerSpec::parse(dm_strategy), dm_m,
                                      clouds.empty() ? 3 : clouds.front().dim(), seed);
            const auto matrix = distance_matrix(clouds, dirs, threads, diagrams);
            if (out.empty()) {
                std::cout << std::setprecision(12);
                for (std::size_t i = 0; i < clouds.size(); ++i) {
                    for (std::size_t j = 0; j < clouds.size(); ++j) {
                        if (j) std::cout << ",";
                        std::cout << matrix[i * clouds.size() + j];
                    }
                    std::cout << "\n";
                }
            } else {
                write_matrix_csv(out, matrix, clouds.size());
            }
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

} // namespace sw
