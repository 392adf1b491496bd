#include "sw/samplers_pointsets.hpp"

#include "sw/ot1d.hpp"
#include "sw/samplers_random.hpp"
#include "sw/sphere.hpp"

#include <algorithm>
#include <cmath>

namespace sw {

DirectionSet fibonacci_sphere(std::size_t m, bool literal) {
    if (m < 1) throw SizeError("fibonacci_sphere: m must be >= 1");
    SamplerSpec spec;
    spec.kind = SamplerKind::fibonacci;
    spec.hyperparams["literal"] = literal ? 1.0 : 0.0;
    DirectionSet out(m, 3, spec, std::nullopt);

    const double golden = 0.5 * (1.0 + std::sqrt(5.0));
    const double azimuth_step = 2.0 * M_PI / (golden * golden);
    const double denom = 2.0 * static_cast<double>(m) + 1.0;
    for (std::size_t k = 0; k < m; ++k) {
        const double z = literal ? (2.0 * static_cast<double>(k)) / denom
                                 : (2.0 * (2.0 * static_cast<double>(k) + 1.0)) / denom - 1.0;
        const double sin_polar = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double chi = azimuth_step * static_cast<double>(k);
        double* u = out.row(k);
        u[0] = sin_polar * std::cos(chi);
        u[1] = sin_polar * std::sin(chi);
        u[2] = z;
    }
    return out;
}

DirectionSet unit_circle_grid(std::size_t m, double phase) {
    if (m < 1) throw SizeError("unit_circle_grid: m must be >= 1");
    SamplerSpec spec;
    spec.kind = SamplerKind::riesz;
    DirectionSet out(m, 2, spec, std::nullopt);
    for (std::size_t k = 0; k < m; ++k) {
        const double a = phase + 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(m);
        out(k, 0) = std::cos(a);
        out(k, 1) = std::sin(a);
    }
    return out;
}

namespace {

double pair_distance(const DirectionSet& p, std::size_t i, std::size_t j) {
    double sq = 0.0;
    for (std::size_t c = 0; c < p.dim(); ++c) {
        const double d = p(i, c) - p(j, c);
        sq += d * d;
    }
    return std::sqrt(sq);
}

} // namespace

double riesz_energy(const DirectionSet& points, double s) {
    const std::size_t m = points.size();
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double d = pair_distance(points, i, j);
            if (s >= 0.0 && d <= 1e-9)
                throw SingularConfiguration("riesz_energy: coincident points");
            if (s > 0.0)
                acc += std::pow(d, -s);
            else if (s == 0.0)
                acc += std::log(1.0 / d);
            else
                acc -= std::pow(d, -s); // -s = |s|
        }
    }
    return 2.0 * acc; // ordered pairs
}

namespace {

// gradient of the one-sided energy sum_{j != i}; tangential part removed
void riesz_gradient(const DirectionSet& p, double s, std::vector<double>& grad) {
    const std::size_t m = p.size();
    const std::size_t d = p.dim();
    grad.assign(m * d, 0.0);
    std::vector<double> diff(d);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            double sq = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                diff[c] = p(i, c) - p(j, c);
                sq += diff[c] * diff[c];
            }
            const double dist = std::sqrt(std::max(sq, 1e-300));
            double w;
            if (s > 0.0)
                w = -s * std::pow(dist, -(s + 2.0));
            else if (s == 0.0)
                w = -1.0 / sq;
            else
                w = -(-s) * std::pow(dist, -s - 2.0); // d/du of -d^{|s|}
            for (std::size_t c = 0; c < d; ++c) {
                grad[i * d + c] += w * diff[c];
                grad[j * d + c] -= w * diff[c];
            }
        }
    }
    // remove the radial component and average over the M-1 interactions so
    // the absolute step stays meaningful at every M
    for (std::size_t i = 0; i < m; ++i) {
        double dot = 0.0;
        for (std::size_t c = 0; c < d; ++c) dot += grad[i * d + c] * p(i, c);
        for (std::size_t c = 0; c < d; ++c)
            grad[i * d + c] = (grad[i * d + c] - dot * p(i, c)) / static_cast<double>(m - 1);
    }
}

void renormalize_rows(DirectionSet& p) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        double sq = 0.0;
        for (std::size_t c = 0; c < p.dim(); ++c) sq += p(i, c) * p(i, c);
        const double norm = std::sqrt(sq);
        for (std::size_t c = 0; c < p.dim(); ++c) p(i, c) /= norm;
    }
}

} // namespace

std::pair<DirectionSet, OptimizerTrace> riesz_minimize(std::size_t m, std::size_t d,
                                                       const RieszOptions& opt, Rng& rng,
                                                       const DirectionSet* init) {
    if (m < 2) throw SizeError("riesz_minimize: m must be >= 2");
    DirectionSet points = init ? *init : sample_uniform(m, d, rng);
    points.strategy().kind = SamplerKind::riesz;
    points.strategy().hyperparams["s"] = opt.s;
    points.strategy().hyperparams["T"] = static_cast<double>(opt.iterations);
    points.strategy().hyperparams["step"] = opt.step;

    OptimizerTrace trace;
    trace.objective_per_iter.reserve(opt.iterations);
    std::vector<double> grad;
    double energy = riesz_energy(points, opt.s);

    for (std::size_t it = 0; it < opt.iterations; ++it) {
        riesz_gradient(points, opt.s, grad);
        double step = opt.step;
        DirectionSet candidate = points;
        for (int attempt = 0;; ++attempt) {
            candidate = points;
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t c = 0; c < d; ++c)
                    candidate(i, c) -= step * grad[i * d + c];
            renormalize_rows(candidate);
            const double new_energy = riesz_energy(candidate, opt.s);
            if (!opt.backtrack || new_energy <= energy || attempt >= 20) {
                if (!opt.backtrack || new_energy <= energy) {
                    points = std::move(candidate);
                    energy = new_energy;
                }
                break;
            }
            step *= 0.5;
        }
        trace.objective_per_iter.push_back(energy);
    }
    trace.iterations = trace.objective_per_iter.size();
    if (trace.iterations >= 2) {
        const double last = trace.objective_per_iter[trace.iterations - 1];
        const double prev = trace.objective_per_iter[trace.iterations - 2];
        trace.converged = std::abs(last - prev) <= 1e-12 * std::max(1.0, std::abs(last));
    }
    return {std::move(points), std::move(trace)};
}

std::vector<double> project_to_great_circle(const std::vector<double>& x,
                                            const std::vector<double>& e,
                                            const std::vector<double>& f) {
    const std::size_t d = x.size();
    double a = 0.0, b = 0.0;
    for (std::size_t c = 0; c < d; ++c) {
        a += x[c] * e[c];
        b += x[c] * f[c];
    }
    const double r = std::sqrt(a * a + b * b);
    std::vector<double> p(d);
    if (r < 1e-300) {
        // x orthogonal to the circle plane: every circle point is equidistant
        return e;
    }
    for (std::size_t c = 0; c < d; ++c) p[c] = (a * e[c] + b * f[c]) / r;
    return p;
}

std::pair<DirectionSet, OptimizerTrace> ssw_minimize(std::size_t m, std::size_t d,
                                                     const SswOptions& opt, Rng& rng,
                                                     const DirectionSet* init) {
    if (d < 3) throw InvalidDimension("ssw_minimize: requires d >= 3");
    if (m < 2) throw SizeError("ssw_minimize: m must be >= 2");
    DirectionSet points = init ? *init : sample_uniform(m, d, rng);
    points.strategy().kind = SamplerKind::ssw;
    points.strategy().hyperparams["L"] = static_cast<double>(opt.circles);
    points.strategy().hyperparams["T"] = static_cast<double>(opt.iterations);
    points.strategy().hyperparams["lr"] = opt.learning_rate;

    OptimizerTrace trace;
    trace.objective_per_iter.reserve(opt.iterations);

    const double two_pi = 2.0 * M_PI;
    std::vector<double> e(d), f(d), grad(m * d), coords(m), a_of(m), b_of(m);
    std::vector<double> deviations;
    std::vector<std::size_t> order;

    for (std::size_t it = 0; it < opt.iterations; ++it) {
        std::fill(grad.begin(), grad.end(), 0.0);
        double z_sum = 0.0;
        for (std::size_t l = 0; l < opt.circles; ++l) {
            // orthonormal frame of a uniform great circle
            for (;;) {
                e = gaussian_vector(d, rng);
                f = gaussian_vector(d, rng);
                double ee = 0.0;
                for (double v : e) ee += v * v;
                if (ee < 1e-200) continue;
                const double en = std::sqrt(ee);
                for (double& v : e) v /= en;
                double ef = 0.0;
                for (std::size_t c = 0; c < d; ++c) ef += e[c] * f[c];
                double ff = 0.0;
                for (std::size_t c = 0; c < d; ++c) {
                    f[c] -= ef * e[c];
                    ff += f[c] * f[c];
                }
                if (ff < 1e-200) continue;
                const double fn = std::sqrt(ff);
                for (double& v : f) v /= fn;
                break;
            }

            for (std::size_t i = 0; i < m; ++i) {
                double a = 0.0, b = 0.0;
                const double* u = points.row(i);
                for (std::size_t c = 0; c < d; ++c) {
                    a += u[c] * e[c];
                    b += u[c] * f[c];
                }
                a_of[i] = a;
                b_of[i] = b;
                double z = std::atan2(b, a) / two_pi;
                if (z < 0.0) z += 1.0;
                coords[i] = z;
            }

            const double obj = w2_circle_unit(coords, &deviations, &order);
            z_sum += obj;

            const double scale = 2.0 / (static_cast<double>(m) * static_cast<double>(opt.circles));
            for (std::size_t slot = 0; slot < m; ++slot) {
                const std::size_t i = order[slot];
                const double denom = a_of[i] * a_of[i] + b_of[i] * b_of[i];
                if (denom < 1e-200) continue;
                const double coef = scale * deviations[slot] / (two_pi * denom);
                for (std::size_t c = 0; c < d; ++c)
                    grad[i * d + c] += coef * (a_of[i] * f[c] - b_of[i] * e[c]);
            }
        }

        // tangential step, then back to the sphere
        for (std::size_t i = 0; i < m; ++i) {
            double* u = points.row(i);
            double dot = 0.0;
            for (std::size_t c = 0; c < d; ++c) dot += grad[i * d + c] * u[c];
            double sq = 0.0;
            for (std::size_t c = 0; c < d; ++c) {
                u[c] -= opt.learning_rate * (grad[i * d + c] - dot * u[c]);
                sq += u[c] * u[c];
            }
            const double norm = std::sqrt(sq);
            for (std::size_t c = 0; c < d; ++c) u[c] /= norm;
        }

        trace.objective_per_iter.push_back(two_pi * two_pi * z_sum /
                                           static_cast<double>(opt.circles));
    }
    trace.iterations = trace.objective_per_iter.size();
    trace.converged = trace.iterations == opt.iterations;
    return {std::move(points), std::move(trace)};
}

} // namespace sw
