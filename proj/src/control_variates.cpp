#include "sw/control_variates.hpp"

#include "sw/samplers_random.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

namespace sw {

std::uint64_t count_harmonics(std::size_t d, std::size_t n) {
    if (d < 2) throw InvalidDimension("count_harmonics: d must be >= 2");
    if (n == 0) return 1;
    if (d == 2) return 2;
    // (2n + d - 2) / (n + d - 2) * C(n + d - 2, n)
    std::uint64_t binom = 1;
    for (std::size_t i = 1; i <= d - 2; ++i) {
        binom = binom * (n + i) / i; // exact: product of consecutive terms
    }
    return binom * (2 * n + d - 2) / (n + d - 2);
}

std::uint64_t basis_size(std::size_t d, std::size_t n) {
    std::uint64_t total = 0;
    for (std::size_t l = 1; l <= n; ++l) total += count_harmonics(d, 2 * l);
    return total;
}

namespace {

// multi-indices of total degree k in d variables, lexicographic
void enumerate_monomials(std::size_t d, unsigned k, std::vector<std::vector<unsigned>>& out) {
    std::vector<unsigned> current(d, 0);
    // recursive descent without recursion: position walk
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
        if (pos == d - 1) {
            current[pos] = left;
            out.push_back(current);
            return;
        }
        for (unsigned e = 0; e <= left; ++e) {
            current[pos] = e;
            rec(pos + 1, left - e);
        }
    };
    rec(0, k);
}

// nullspace basis of the Laplacian viewed as a linear map from degree-k
// homogeneous polynomials to degree-(k-2)
std::vector<std::vector<double>> harmonic_nullspace(std::size_t d, unsigned k) {
    std::vector<std::vector<unsigned>> cols, rows;
    enumerate_monomials(d, k, cols);
    enumerate_monomials(d, k - 2, rows);

    const std::size_t nr = rows.size(), nc = cols.size();
    // index of a degree-(k-2) monomial
    auto row_index = [&](const std::vector<unsigned>& beta) -> std::size_t {
        const auto it = std::lower_bound(rows.begin(), rows.end(), beta);
        return static_cast<std::size_t>(it - rows.begin());
    };

    std::vector<double> a(nr * nc, 0.0);
    for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t j = 0; j < d; ++j) {
            const unsigned e = cols[c][j];
            if (e < 2) continue;
            std::vector<unsigned> beta = cols[c];
            beta[j] -= 2;
            a[row_index(beta) * nc + c] += static_cast<double>(e) * (e - 1);
        }
    }

    // Gaussian elimination with partial pivoting
    std::vector<std::size_t> pivot_col_of_row(nr, nc);
    std::vector<bool> is_pivot(nc, false);
    std::size_t r = 0;
    for (std::size_t c = 0; c < nc && r < nr; ++c) {
        std::size_t best = r;
        for (std::size_t i = r + 1; i < nr; ++i)
            if (std::abs(a[i * nc + c]) > std::abs(a[best * nc + c])) best = i;
        if (std::abs(a[best * nc + c]) < 1e-12) continue;
        if (best != r)
            for (std::size_t j = 0; j < nc; ++j) std::swap(a[r * nc + j], a[best * nc + j]);
        const double piv = a[r * nc + c];
        for (std::size_t j = 0; j < nc; ++j) a[r * nc + j] /= piv;
        for (std::size_t i = 0; i < nr; ++i) {
            if (i == r) continue;
            const double factor = a[i * nc + c];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j < nc; ++j) a[i * nc + j] -= factor * a[r * nc + j];
        }
        pivot_col_of_row[r] = c;
        is_pivot[c] = true;
        ++r;
    }

    std::vector<std::vector<double>> basis;
    for (std::size_t c = 0; c < nc; ++c) {
        if (is_pivot[c]) continue;
        std::vector<double> v(nc, 0.0);
        v[c] = 1.0;
        for (std::size_t i = 0; i < r; ++i) {
            const std::size_t pc = pivot_col_of_row[i];
            v[pc] = -a[i * nc + c];
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Cholesky factor (lower) of a symmetric positive definite matrix
std::vector<double> cholesky(std::vector<double> g, std::size_t p) {
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = g[i * p + j];
            for (std::size_t k = 0; k < j; ++k) sum -= g[i * p + k] * g[j * p + k];
            if (i == j) {
                if (sum <= 0.0)
                    throw std::runtime_error("harmonic basis Gram not positive definite");
                g[i * p + j] = std::sqrt(sum);
            } else {
                g[i * p + j] = sum / g[j * p + j];
            }
        }
        for (std::size_t j = i + 1; j < p; ++j) g[i * p + j] = 0.0;
    }
    return g;
}

} // namespace

HarmonicBasis HarmonicBasis::build(std::size_t d, std::size_t n, std::size_t cap) {
    if (d < 2) throw InvalidDimension("HarmonicBasis: d must be >= 2");
    if (n < 1) throw ConfigError("HarmonicBasis: n must be >= 1");
    const std::uint64_t p = basis_size(d, n);
    if (p > cap) throw BasisTooLarge("HarmonicBasis: p = " + std::to_string(p) +
                                     " exceeds cap " + std::to_string(cap));

    HarmonicBasis basis;
    basis.dim_ = d;
    basis.n_ = n;
    basis.p_ = static_cast<std::size_t>(p);
    if (d == 2) {
        basis.circle_ = true;
        return basis;
    }

    for (unsigned l = 1; l <= n; ++l) {
        const unsigned k = 2 * l;
        std::vector<std::vector<unsigned>> monomials;
        enumerate_monomials(d, k, monomials);
        const auto nullspace = harmonic_nullspace(d, k);
        if (nullspace.size() != count_harmonics(d, k))
            throw std::runtime_error("harmonic nullspace dimension mismatch");
        for (const auto& v : nullspace) {
            Poly poly;
            for (std::size_t c = 0; c < v.size(); ++c) {
                if (v[c] == 0.0) continue;
                poly.terms.push_back({v[c], monomials[c]});
            }
            basis.polys_.push_back(std::move(poly));
        }
    }
    basis.max_power_ = 2 * static_cast<unsigned>(n);

    // orthonormalize against an empirical Gram matrix for conditioning
    // (fixed internal seed: the basis is a deterministic function of d, n)
    Rng rng(0x5348432Dull ^ (d << 8) ^ n);
    const std::size_t samples = 10 * basis.p_;
    DirectionSet pts = sample_uniform(samples, d, rng);
    std::vector<double> b(samples * basis.p_);
    for (std::size_t i = 0; i < samples; ++i)
        basis.evaluate(pts.row(i), b.data() + i * basis.p_);
    const std::size_t pp = basis.p_;
    std::vector<double> gram(pp * pp, 0.0);
    for (std::size_t i = 0; i < samples; ++i) {
        const double* row = b.data() + i * pp;
        for (std::size_t x = 0; x < pp; ++x)
            for (std::size_t y = 0; y <= x; ++y) gram[x * pp + y] += row[x] * row[y];
    }
    for (std::size_t x = 0; x < pp; ++x)
        for (std::size_t y = 0; y <= x; ++y) {
            gram[x * pp + y] /= static_cast<double>(samples);
            gram[y * pp + x] = gram[x * pp + y];
        }
    const std::vector<double> chol = cholesky(std::move(gram), pp);

    // new_j = sum_i inv(L)^T[i, j] old_i; solve L w = e_j by forward
    // substitution to get the mixing column
    std::vector<Poly> mixed(pp);
    std::vector<double> w(pp);
    for (std::size_t j = 0; j < pp; ++j) {
        std::fill(w.begin(), w.end(), 0.0);
        // column j of inv(L^T): solve L^T w = e_j -> back substitution
        for (std::size_t ii = pp; ii-- > 0;) {
            double rhs = (ii == j) ? 1.0 : 0.0;
            for (std::size_t kk = ii + 1; kk < pp; ++kk) rhs -= chol[kk * pp + ii] * w[kk];
            w[ii] = rhs / chol[ii * pp + ii];
        }
        Poly combined;
        for (std::size_t i = 0; i < pp; ++i) {
            if (w[i] == 0.0) continue;
            for (const auto& term : basis.polys_[i].terms)
                combined.terms.push_back({w[i] * term.coeff, term.exponents});
        }
        // merge duplicate exponent vectors
        std::sort(combined.terms.begin(), combined.terms.end(),
                  [](const Term& a, const Term& b) { return a.exponents < b.exponents; });
        Poly merged;
        for (const auto& term : combined.terms) {
            if (!merged.terms.empty() && merged.terms.back().exponents == term.exponents)
                merged.terms.back().coeff += term.coeff;
            else
                merged.terms.push_back(term);
        }
        mixed[j] = std::move(merged);
    }
    basis.polys_ = std::move(mixed);
    return basis;
}

void HarmonicBasis::evaluate(const double* point, double* out) const {
    if (circle_) {
        const double t = std::atan2(point[1], point[0]);
        for (std::size_t k = 1; k <= n_; ++k) {
            out[2 * (k - 1)] = std::cos(2.0 * static_cast<double>(k) * t);
            out[2 * (k - 1) + 1] = std::sin(2.0 * static_cast<double>(k) * t);
        }
        return;
    }
    // power table per coordinate
    const std::size_t d = dim_;
    thread_local std::vector<double> powers;
    powers.resize(d * (max_power_ + 1));
    for (std::size_t c = 0; c < d; ++c) {
        powers[c * (max_power_ + 1)] = 1.0;
        for (unsigned e = 1; e <= max_power_; ++e)
            powers[c * (max_power_ + 1) + e] = powers[c * (max_power_ + 1) + e - 1] * point[c];
    }
    for (std::size_t j = 0; j < polys_.size(); ++j) {
        double acc = 0.0;
        for (const auto& term : polys_[j].terms) {
            double prod = term.coeff;
            for (std::size_t c = 0; c < d; ++c) {
                const unsigned e = term.exponents[c];
                if (e) prod *= powers[c * (max_power_ + 1) + e];
            }
            acc += prod;
        }
        out[j] = acc;
    }
}

std::vector<double> HarmonicBasis::evaluate_matrix(const DirectionSet& dirs) const {
    std::vector<double> y(dirs.size() * p_);
    for (std::size_t i = 0; i < dirs.size(); ++i) evaluate(dirs.row(i), y.data() + i * p_);
    return y;
}

std::size_t shcv_default_degree(std::size_t m, std::size_t d) {
    const double exponent = 1.0 / (2.0 * (static_cast<double>(d) - 1.0));
    const double nd = std::floor(std::pow(static_cast<double>(m), exponent) / 2.0);
    return std::max<std::size_t>(1, static_cast<std::size_t>(nd));
}

double fit_control_variates(const std::vector<double>& f, const std::vector<double>& y,
                            std::size_t p, std::vector<double>* beta_out) {
    const std::size_t m = f.size();
    double f_mean = 0.0;
    for (double v : f) f_mean += v;
    f_mean /= static_cast<double>(m);
    if (p == 0) {
        if (beta_out) beta_out->clear();
        return f_mean;
    }

    std::vector<double> y_mean(p, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < p; ++j) y_mean[j] += y[i * p + j];
    for (double& v : y_mean) v /= static_cast<double>(m);

    // centered design and response
    std::vector<double> a(m * p);
    std::vector<double> rhs(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < p; ++j) a[i * p + j] = y[i * p + j] - y_mean[j];
        rhs[i] = f[i] - f_mean;
    }

    // Householder QR, R kept in place, Q applied to rhs on the fly
    bool rank_deficient = false;
    std::vector<double> beta(p, 0.0);
    {
        std::vector<double> v(m);
        for (std::size_t k = 0; k < p; ++k) {
            double norm = 0.0;
            for (std::size_t i = k; i < m; ++i) norm += a[i * p + k] * a[i * p + k];
            norm = std::sqrt(norm);
            const double alpha = (a[k * p + k] >= 0.0) ? -norm : norm;
            double vnorm_sq = 0.0;
            for (std::size_t i = k; i < m; ++i) {
                v[i] = a[i * p + k];
                if (i == k) v[i] -= alpha;
                vnorm_sq += v[i] * v[i];
            }
            if (vnorm_sq == 0.0 || norm == 0.0) {
                rank_deficient = true;
                break;
            }
            for (std::size_t j = k; j < p; ++j) {
                double dot = 0.0;
                for (std::size_t i = k; i < m; ++i) dot += v[i] * a[i * p + j];
                const double fac = 2.0 * dot / vnorm_sq;
                for (std::size_t i = k; i < m; ++i) a[i * p + j] -= fac * v[i];
            }
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += v[i] * rhs[i];
            const double fac = 2.0 * dot / vnorm_sq;
            for (std::size_t i = k; i < m; ++i) rhs[i] -= fac * v[i];
        }
        if (!rank_deficient) {
            double max_diag = 0.0, min_diag = 0.0;
            for (std::size_t k = 0; k < p; ++k) {
                const double mag = std::abs(a[k * p + k]);
                max_diag = std::max(max_diag, mag);
                min_diag = (k == 0) ? mag : std::min(min_diag, mag);
            }
            if (min_diag < 1e-10 * max_diag) rank_deficient = true;
        }
        if (!rank_deficient) {
            for (std::size_t k = p; k-- > 0;) {
                double sum = rhs[k];
                for (std::size_t j = k + 1; j < p; ++j) sum -= a[k * p + j] * beta[j];
                beta[k] = sum / a[k * p + k];
            }
        }
    }

    if (rank_deficient) {
        // ridge on the normal equations, lambda from the design scale
        std::vector<double> gram(p * p, 0.0), yt_f(p, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t x = 0; x < p; ++x) {
                const double cx = y[i * p + x] - y_mean[x];
                yt_f[x] += cx * (f[i] - f_mean);
                for (std::size_t z = 0; z <= x; ++z)
                    gram[x * p + z] += cx * (y[i * p + z] - y_mean[z]);
            }
        }
        double trace = 0.0;
        for (std::size_t x = 0; x < p; ++x) trace += gram[x * p + x];
        const double lambda = 1e-10 * trace / static_cast<double>(p);
        for (std::size_t x = 0; x < p; ++x) {
            gram[x * p + x] += lambda;
            for (std::size_t z = x + 1; z < p; ++z) gram[x * p + z] = gram[z * p + x];
        }
        const std::vector<double> chol = cholesky(std::move(gram), p);
        std::vector<double> w(p);
        for (std::size_t i = 0; i < p; ++i) {
            double sum = yt_f[i];
            for (std::size_t k = 0; k < i; ++k) sum -= chol[i * p + k] * w[k];
            w[i] = sum / chol[i * p + i];
        }
        for (std::size_t i = p; i-- > 0;) {
            double sum = w[i];
            for (std::size_t k = i + 1; k < p; ++k) sum -= chol[k * p + i] * beta[k];
            beta[i] = sum / chol[i * p + i];
        }
    }

    double adjust = 0.0;
    for (std::size_t j = 0; j < p; ++j) adjust += y_mean[j] * beta[j];
    if (beta_out) *beta_out = beta;
    return f_mean - adjust;
}

EstimateResult shcv_estimate(const PointCloud& mu, const PointCloud& nu, std::size_t m,
                             Rng& rng, const ShcvOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t d = mu.dim();
    const std::size_t n =
        (opt.degree >= 0) ? static_cast<std::size_t>(opt.degree) : shcv_default_degree(m, d);

    EstimateResult result;
    result.m_used = m;
    if (n == 0) {
        DirectionSet dirs = sample_uniform(m, d, rng);
        const std::vector<double> f = f_values(mu, nu, dirs, opt.threads);
        result.value = fit_control_variates(f, {}, 0, nullptr);
    } else {
        const std::uint64_t p = basis_size(d, n);
        if (m <= p + 1)
            throw SizeError("shcv_estimate: need m > L(n,d) + 1 samples (p = " +
                            std::to_string(p) + ")");
        const HarmonicBasis basis = HarmonicBasis::build(d, n);
        DirectionSet dirs = sample_uniform(m, d, rng);
        const std::vector<double> f = f_values(mu, nu, dirs, opt.threads);
        const std::vector<double> y = basis.evaluate_matrix(dirs);
        result.value = fit_control_variates(f, y, basis.size(), nullptr);
    }
    result.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return result;
}

} // namespace sw
