#include "sw/diagnostics.hpp"

#include "sw/kernels.hpp"
#include "sw/numeric.hpp"
#include "sw/ot1d.hpp"
#include "sw/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>

namespace sw {

namespace {

double star_exact_1d(const CubePointSet& cube) {
    std::vector<double> x(cube.points);
    std::sort(x.begin(), x.end());
    const double m = static_cast<double>(x.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double centered = std::abs(x[i] - (2.0 * i + 1.0) / (2.0 * m));
        worst = std::max(worst, centered);
    }
    return 1.0 / (2.0 * m) + worst;
}

// Fenwick tree over compressed y ranks
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}
    void add(std::size_t idx) {
        for (++idx; idx < tree_.size(); idx += idx & (~idx + 1)) ++tree_[idx];
    }
    // count of inserted ranks <= idx
    int prefix(std::size_t idx) const {
        int s = 0;
        for (++idx; idx > 0; idx -= idx & (~idx + 1)) s += tree_[idx];
        return s;
    }

private:
    std::vector<int> tree_;
};

double star_exact_2d(const CubePointSet& cube) {
    const std::size_t m = cube.m;
    const double md = static_cast<double>(m);

    struct Pt {
        double x, y;
        std::size_t yrank;
    };
    std::vector<Pt> pts(m);
    std::vector<double> ys(m);
    for (std::size_t i = 0; i < m; ++i) {
        pts[i] = {cube(i, 0), cube(i, 1), 0};
        ys[i] = cube(i, 1);
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    for (auto& p : pts)
        p.yrank = std::lower_bound(ys.begin(), ys.end(), p.y) - ys.begin();
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) { return a.x < b.x; });

    std::vector<double> y_candidates(ys);
    y_candidates.push_back(1.0);

    // sweep x thresholds; for each corner (a,b) evaluate both sides of the
    // discrepancy with strict / non-strict counts
    Fenwick strict_tree(ys.size()), nonstrict_tree(ys.size());
    double worst = 0.0;
    std::size_t i = 0;
    std::vector<double> x_candidates;
    for (std::size_t k = 0; k < m; ++k)
        if (k == 0 || pts[k].x != pts[k - 1].x) x_candidates.push_back(pts[k].x);
    x_candidates.push_back(1.0);

    for (double a : x_candidates) {
        // strict: points with x < a; non-strict: x <= a
        while (i < m && pts[i].x < a) {
            strict_tree.add(pts[i].yrank);
            nonstrict_tree.add(pts[i].yrank);
            ++i;
        }
        std::size_t i2 = i;
        std::vector<std::size_t> pending;
        while (i2 < m && pts[i2].x == a) {
            nonstrict_tree.add(pts[i2].yrank);
            pending.push_back(pts[i2].yrank);
            ++i2;
        }
        for (std::size_t bi = 0; bi < y_candidates.size(); ++bi) {
            const double b = y_candidates[bi];
            // count y < b among strict set
            const int below =
                (bi < ys.size()) ? (bi == 0 ? 0 : strict_tree.prefix(bi - 1))
                                 : strict_tree.prefix(ys.size() - 1);
            // count y <= b among non-strict set
            const int upto = (bi < ys.size()) ? nonstrict_tree.prefix(bi)
                                              : nonstrict_tree.prefix(ys.size() - 1);
            const double vol = a * b;
            worst = std::max(worst, vol - static_cast<double>(below) / md);
            worst = std::max(worst, static_cast<double>(upto) / md - vol);
        }
        // roll the non-strict insertions forward: they are strict for the
        // next larger threshold
        for (std::size_t r : pending) strict_tree.add(r);
        i = i2;
    }
    return worst;
}

double star_grid_bound(const CubePointSet& cube, std::size_t resolution) {
    // sup over grid corners plus the per-cell volume variation d/resolution
    return star_discrepancy_grid(cube, resolution) +
           static_cast<double>(cube.dim) / static_cast<double>(resolution);
}

} // namespace

StarDiscrepancy star_discrepancy(const CubePointSet& cube) {
    if (cube.m < 1) throw SizeError("star_discrepancy: empty point set");
    if (cube.dim == 1) return {star_exact_1d(cube), true};
    if (cube.dim == 2) return {star_exact_2d(cube), true};
    return {star_grid_bound(cube, 64), false};
}

double star_discrepancy_grid(const CubePointSet& cube, std::size_t resolution) {
    const double md = static_cast<double>(cube.m);
    const std::size_t d = cube.dim;
    std::vector<std::size_t> idx(d, 1);
    double worst = 0.0;
    for (;;) {
        double vol = 1.0;
        for (std::size_t j = 0; j < d; ++j)
            vol *= static_cast<double>(idx[j]) / static_cast<double>(resolution);
        std::size_t count = 0;
        for (std::size_t i = 0; i < cube.m; ++i) {
            bool inside = true;
            for (std::size_t j = 0; j < d; ++j) {
                if (!(cube(i, j) < static_cast<double>(idx[j]) / static_cast<double>(resolution))) {
                    inside = false;
                    break;
                }
            }
            if (inside) ++count;
        }
        worst = std::max(worst, std::abs(static_cast<double>(count) / md - vol));
        std::size_t j = 0;
        while (j < d && ++idx[j] > resolution) {
            idx[j] = 1;
            ++j;
        }
        if (j == d) break;
    }
    return worst;
}

double cap_l2_discrepancy(const DirectionSet& dirs) {
    const auto [c_d, a_d] = stolarsky_constants(dirs.dim());
    const double m = static_cast<double>(dirs.size());
    const double pair_sum =
        kernels::pairwise_dist_sum(dirs.data().data(), dirs.size(), dirs.dim());
    const double value = c_d * (a_d - pair_sum / (m * m));
    return std::max(value, 0.0);
}

std::pair<double, double> cap_l2_mc_oracle(const DirectionSet& dirs, std::size_t n_caps,
                                           Rng& rng) {
    const std::size_t d = dirs.dim();
    const double m = static_cast<double>(dirs.size());
    std::vector<double> dots(dirs.size());
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t k = 0; k < n_caps; ++k) {
        const Direction c = gaussian_direction(d, rng);
        const double t = 2.0 * rng.next_double() - 1.0;
        kernels::dot_rows(dirs.data().data(), dirs.size(), d, c.data(), dots.data());
        std::size_t inside = 0;
        for (double v : dots)
            if (v > t) ++inside;
        const double dev = static_cast<double>(inside) / m - cap_measure(d, t);
        const double sq = dev * dev;
        sum += sq;
        sum_sq += sq * sq;
    }
    const double n = static_cast<double>(n_caps);
    // the height integral runs over [-1,1], total mass 2
    const double mean = sum / n;
    const double var = std::max(0.0, sum_sq / n - mean * mean);
    return {2.0 * mean, 2.0 * std::sqrt(var / n)};
}

double cap_max_discrepancy_approx(const DirectionSet& dirs, std::size_t n_caps, Rng& rng) {
    if (n_caps < 1) throw SizeError("cap_max_discrepancy_approx: n_caps must be >= 1");
    const std::size_t d = dirs.dim();
    const double m = static_cast<double>(dirs.size());
    std::vector<double> dots(dirs.size());
    double sup = 0.0;
    for (std::size_t k = 0; k < n_caps; ++k) {
        const Direction c = gaussian_direction(d, rng);
        const double t = 2.0 * rng.next_double() - 1.0;
        kernels::dot_rows(dirs.data().data(), dirs.size(), d, c.data(), dots.data());
        std::size_t inside = 0;
        for (double v : dots)
            if (v > t) ++inside;
        sup = std::max(sup, std::abs(static_cast<double>(inside) / m - cap_measure(d, t)));
    }
    return sup;
}

double sigma_hat(const std::vector<double>& values) {
    if (values.size() < 2) throw SizeError("sigma_hat: need at least two values");
    const double m = static_cast<double>(values.size());
    const double mean = kernels::deterministic_sum(values.data(), values.size()) / m;
    double acc = 0.0;
    for (double v : values) {
        const double c = v - mean;
        acc += c * c;
    }
    return std::sqrt(acc / m);
}

ConfidenceInterval confidence_interval(double estimate, double sigma, std::size_t m,
                                       double level) {
    if (level <= 0.0 || level >= 1.0)
        throw ConfigError("confidence_interval: level must be in (0,1)");
    if (m < 1) throw SizeError("confidence_interval: m must be >= 1");
    if (sigma < 0.0) throw DataError("confidence_interval: sigma must be >= 0");
    const double q = inv_norm_cdf(0.5 + 0.5 * level);
    return {estimate, sigma * q / std::sqrt(static_cast<double>(m)), level};
}

EstimateResult rqmc_aggregate(const std::vector<double>& replicates) {
    if (replicates.size() < 2) throw SizeError("rqmc_aggregate: need at least two replicates");
    const double k = static_cast<double>(replicates.size());
    const double mean = kernels::deterministic_sum(replicates.data(), replicates.size()) / k;
    double acc = 0.0;
    for (double v : replicates) {
        const double c = v - mean;
        acc += c * c;
    }
    EstimateResult out;
    out.value = mean;
    out.std_error = std::sqrt(acc / (k - 1.0)) / std::sqrt(k);
    out.m_used = replicates.size();
    return out;
}

SlopeFit fit_loglog_slope(const std::vector<std::pair<double, double>>& m_and_error) {
    SlopeFit fit;
    std::vector<std::pair<double, double>> logs;
    for (const auto& [m, err] : m_and_error) {
        if (m <= 0.0) throw DataError("fit_loglog_slope: m must be positive");
        if (err <= 0.0) {
            ++fit.excluded;
            continue;
        }
        logs.emplace_back(std::log(m), std::log(err));
    }
    if (logs.size() < 3) throw SizeError("fit_loglog_slope: need at least three usable records");
    const double n = static_cast<double>(logs.size());
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : logs) {
        sx += x;
        sy += y;
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const auto& [x, y] : logs) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = (syy == 0.0) ? 1.0 : (sxy * sxy) / (sxx * syy);
    fit.used = logs.size();
    return fit;
}

void write_stolarsky_constants(const std::string& path, const std::vector<std::size_t>& dims) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot open " + path);
    out << "# spherical-cap L2 discrepancy constants, one line per dimension:\n"
           "#   d  C_d  A_d\n"
           "# A_d = mean distance of two independent uniform points on S^{d-1}\n"
           "#     = 2^{d-1} Gamma(d/2)^2 / (sqrt(pi) Gamma(d - 1/2))\n"
           "# C_d = 1 / ((d-1) Z_d) with Z_d = sqrt(pi) Gamma((d-1)/2) / Gamma(d/2),\n"
           "# calibrated so that C_d (A_d - mean pairwise distance) matches the\n"
           "# Monte Carlo evaluation of the defining cap integral.\n";
    out << std::setprecision(15);
    for (std::size_t d : dims) {
        const auto [c_d, a_d] = stolarsky_constants(d);
        out << d << " " << c_d << " " << a_d << "\n";
    }
}

} // namespace sw
