#include "imtk/tsne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "imtk/errors.hpp"
#include "imtk/rng.hpp"

namespace imtk {

namespace {

std::vector<double> pairwise_sq(const std::vector<std::vector<double>>& x) {
    const std::size_t n = x.size();
    std::vector<double> d(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < x[i].size(); ++k) {
                const double t = x[i][k] - x[j][k];
                acc += t * t;
            }
            d[i * n + j] = acc;
            d[j * n + i] = acc;
        }
    return d;
}

/// Conditional distribution row for point i at precision beta, returning
/// its Shannon entropy (nats). p is written densely (p[i] = 0).
double fill_row(const std::vector<double>& d2, std::size_t n, std::size_t i, double beta,
                std::vector<double>& p) {
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        p[j] = j == i ? 0.0 : std::exp(-d2[i * n + j] * beta);
        sum += p[j];
    }
    if (sum <= 0.0) sum = std::numeric_limits<double>::min();
    double h = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (p[j] <= 0.0) continue;
        h += p[j] * d2[i * n + j];
        p[j] /= sum;
    }
    return std::log(sum) + beta * h / sum;
}

} // namespace

std::vector<std::array<double, 2>> tsne_embed(const std::vector<std::vector<double>>& points,
                                              double perplexity, double learning_rate,
                                              int iterations, std::uint64_t rng_seed,
                                              std::vector<double>* kl_trace) {
    const std::size_t n = points.size();
    if (!(perplexity > 0.0) || !(learning_rate > 0.0) || iterations < 1)
        throw DomainError("t-SNE parameters must be positive");
    if (static_cast<double>(n) < 3.0 * perplexity)
        throw DomainError("t-SNE needs at least 3 * perplexity points");
    for (const std::vector<double>& p : points)
        if (p.size() != points.front().size())
            throw DomainError("t-SNE points must share one dimension");

    const std::vector<double> d2 = pairwise_sq(points);
    const double target_entropy = std::log(perplexity); // nats

    // Per-point bandwidth search to the target perplexity.
    std::vector<double> p_cond(n * n, 0.0);
    std::vector<double> row(n);
    for (std::size_t i = 0; i < n; ++i) {
        double beta = 1.0, lo = 0.0, hi = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 64; ++it) {
            const double h = fill_row(d2, n, i, beta, row);
            if (std::abs(h - target_entropy) < 1e-7) break;
            if (h > target_entropy) {
                lo = beta;
                beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
            } else {
                hi = beta;
                beta = 0.5 * (beta + lo);
            }
        }
        fill_row(d2, n, i, beta, row);
        for (std::size_t j = 0; j < n; ++j) p_cond[i * n + j] = row[j];
    }

    // Symmetrize.
    std::vector<double> p(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            p[i * n + j] = std::max((p_cond[i * n + j] + p_cond[j * n + i]) / (2.0 * n), 1e-12);

    RandomStream rng(rng_seed);
    std::vector<std::array<double, 2>> y(n), update(n, {0.0, 0.0}), gains(n, {1.0, 1.0});
    for (std::array<double, 2>& v : y) v = {1e-4 * rng.normal(), 1e-4 * rng.normal()};

    std::vector<double> qnum(n * n, 0.0);
    if (kl_trace) {
        kl_trace->clear();
        kl_trace->reserve(static_cast<std::size_t>(iterations));
    }
    for (int iter = 0; iter < iterations; ++iter) {
        const double exaggeration = iter < 250 ? 12.0 : 1.0;
        const double momentum = iter < 250 ? 0.5 : 0.8;

        double qsum = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                const double dx = y[i][0] - y[j][0];
                const double dy = y[i][1] - y[j][1];
                const double num = 1.0 / (1.0 + dx * dx + dy * dy);
                qnum[i * n + j] = num;
                qnum[j * n + i] = num;
                qsum += 2.0 * num;
            }
        if (qsum <= 0.0) qsum = std::numeric_limits<double>::min();

        if (kl_trace) {
            double kl = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    if (j == i) continue;
                    const double q = std::max(qnum[i * n + j] / qsum, 1e-12);
                    kl += p[i * n + j] * std::log(p[i * n + j] / q);
                }
            kl_trace->push_back(kl);
        }

        // Trust region: small point counts make the affinities, and with
        // them the raw steps, large enough to ping-pong past the optimum and
        // blow the map up. Capping each step at a fraction of the current
        // map radius keeps the descent quasi-static while the map grows from
        // its tiny random start; the absolute bound stops runaway expansion
        // once the map has macroscopic scale.
        double rms = 0.0;
        for (const std::array<double, 2>& v : y) rms += v[0] * v[0] + v[1] * v[1];
        rms = std::sqrt(rms / static_cast<double>(n));
        const double max_step = std::min(5.0, 0.1 * rms + 1e-6);

        for (std::size_t i = 0; i < n; ++i) {
            double gx = 0.0, gy = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const double num = qnum[i * n + j];
                const double q = std::max(num / qsum, 1e-12);
                const double coeff = 4.0 * (exaggeration * p[i * n + j] - q) * num;
                gx += coeff * (y[i][0] - y[j][0]);
                gy += coeff * (y[i][1] - y[j][1]);
            }
            for (int dim = 0; dim < 2; ++dim) {
                const double g = dim == 0 ? gx : gy;
                double& gain = gains[i][static_cast<std::size_t>(dim)];
                double& upd = update[i][static_cast<std::size_t>(dim)];
                gain = (g > 0.0) != (upd > 0.0) ? gain + 0.2 : gain * 0.8;
                gain = std::max(gain, 0.01);
                upd = momentum * upd - learning_rate * gain * g;
                upd = std::clamp(upd, -max_step, max_step);
                y[i][static_cast<std::size_t>(dim)] += upd;
            }
        }

        double mx = 0.0, my = 0.0;
        for (const std::array<double, 2>& v : y) {
            mx += v[0];
            my += v[1];
        }
        mx /= static_cast<double>(n);
        my /= static_cast<double>(n);
        for (std::array<double, 2>& v : y) {
            v[0] -= mx;
            v[1] -= my;
        }
    }
    return y;
}

std::vector<int> kmeans_2d(const std::vector<std::array<double, 2>>& points, int k,
                           std::uint64_t rng_seed) {
    const std::size_t n = points.size();
    if (k < 1 || static_cast<std::size_t>(k) > n)
        throw DomainError("k must lie in [1, point count]");

    // Farthest-first seeding from a random start point.
    RandomStream rng(rng_seed);
    std::vector<std::array<double, 2>> centers;
    centers.push_back(points[rng.uniform_index(n)]);
    auto sq = [](const std::array<double, 2>& a, const std::array<double, 2>& b) {
        const double dx = a[0] - b[0], dy = a[1] - b[1];
        return dx * dx + dy * dy;
    };
    while (centers.size() < static_cast<std::size_t>(k)) {
        std::size_t far = 0;
        double best = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            double d = std::numeric_limits<double>::infinity();
            for (const std::array<double, 2>& c : centers) d = std::min(d, sq(points[i], c));
            if (d > best) {
                best = d;
                far = i;
            }
        }
        centers.push_back(points[far]);
    }

    std::vector<int> label(n, 0);
    for (int it = 0; it < 100; ++it) {
        bool moved = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best = 0;
            double bd = sq(points[i], centers[0]);
            for (int c = 1; c < k; ++c) {
                const double d = sq(points[i], centers[static_cast<std::size_t>(c)]);
                if (d < bd) {
                    bd = d;
                    best = c;
                }
            }
            if (best != label[i]) {
                label[i] = best;
                moved = true;
            }
        }
        std::vector<std::array<double, 2>> sum(static_cast<std::size_t>(k), {0.0, 0.0});
        std::vector<std::size_t> count(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) {
            sum[static_cast<std::size_t>(label[i])][0] += points[i][0];
            sum[static_cast<std::size_t>(label[i])][1] += points[i][1];
            ++count[static_cast<std::size_t>(label[i])];
        }
        for (int c = 0; c < k; ++c) {
            if (count[static_cast<std::size_t>(c)] == 0) continue; // keep old center
            centers[static_cast<std::size_t>(c)] = {
                sum[static_cast<std::size_t>(c)][0] / count[static_cast<std::size_t>(c)],
                sum[static_cast<std::size_t>(c)][1] / count[static_cast<std::size_t>(c)]};
        }
        if (!moved && it > 0) break;
    }
    return label;
}

double cluster_purity(const std::vector<int>& predicted, const std::vector<int>& truth) {
    if (predicted.size() != truth.size() || predicted.empty())
        throw DomainError("purity needs equal-length non-empty label lists");
    std::map<int, std::map<int, std::size_t>> hist;
    for (std::size_t i = 0; i < predicted.size(); ++i) ++hist[predicted[i]][truth[i]];
    std::size_t good = 0;
    for (const auto& [cluster, counts] : hist) {
        std::size_t best = 0;
        for (const auto& [label, c] : counts) best = std::max(best, c);
        good += best;
    }
    return static_cast<double>(good) / static_cast<double>(predicted.size());
}

} // namespace imtk
