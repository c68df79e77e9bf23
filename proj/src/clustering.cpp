#include "cgso/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "cgso/rng.hpp"
#include "cgso/spectral.hpp"

namespace cgso {

Partition canonicalize(const std::vector<int>& labels) {
    Partition p;
    p.labels.resize(labels.size());
    std::vector<int> remap;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int l = labels[i];
        if (l < 0) throw std::invalid_argument("canonicalize: negative label");
        int id = -1;
        for (std::size_t j = 0; j < remap.size(); ++j)
            if (remap[j] == l) {
                id = static_cast<int>(j);
                break;
            }
        if (id == -1) {
            id = static_cast<int>(remap.size());
            remap.push_back(l);
        }
        p.labels[i] = id;
    }
    p.k = static_cast<int>(remap.size());
    return p;
}

namespace {

double sq_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

struct KMeansRun {
    std::vector<int> assign;
    double wcss = std::numeric_limits<double>::infinity();
};

KMeansRun kmeans_single(const DenseMatrix& pts, int k, Rng& rng, int max_iter) {
    const int n = pts.rows, d = pts.cols;
    DenseMatrix centers(k, d);

    // k-means++ seeding.
    std::vector<double> dist2(n, std::numeric_limits<double>::infinity());
    {
        const int first = static_cast<int>(rng.next_below(n));
        std::copy(pts.row(first).begin(), pts.row(first).end(), centers.row(0).begin());
        for (int c = 1; c < k; ++c) {
            double total = 0.0;
            for (int i = 0; i < n; ++i) {
                dist2[i] = std::min(dist2[i], sq_dist(pts.row(i), centers.row(c - 1)));
                total += dist2[i];
            }
            int pick;
            if (total > 0.0) {
                const double target = rng.next_unit() * total;
                double acc = 0.0;
                pick = n - 1;
                for (int i = 0; i < n; ++i) {
                    acc += dist2[i];
                    if (acc >= target) {
                        pick = i;
                        break;
                    }
                }
            } else {
                pick = static_cast<int>(rng.next_below(n));
            }
            std::copy(pts.row(pick).begin(), pts.row(pick).end(), centers.row(c).begin());
        }
    }

    KMeansRun run;
    run.assign.assign(n, -1);
    std::vector<int> count(k);
    for (int iter = 0; iter < max_iter; ++iter) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = sq_dist(pts.row(i), centers.row(0));
            for (int c = 1; c < k; ++c) {
                const double dd = sq_dist(pts.row(i), centers.row(c));
                if (dd < best_d) {
                    best_d = dd;
                    best = c;
                }
            }
            if (run.assign[i] != best) {
                run.assign[i] = best;
                changed = true;
            }
        }

        // Repair empty clusters with the point farthest from its centroid.
        std::fill(count.begin(), count.end(), 0);
        for (int i = 0; i < n; ++i) ++count[run.assign[i]];
        std::fill(centers.data.begin(), centers.data.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            auto dst = centers.row(run.assign[i]);
            auto src = pts.row(i);
            for (int c = 0; c < d; ++c) dst[c] += src[c];
        }
        for (int c = 0; c < k; ++c)
            if (count[c] > 0)
                for (int j = 0; j < d; ++j) centers(c, j) /= count[c];
        for (int c = 0; c < k; ++c) {
            if (count[c] > 0) continue;
            int worst = -1;
            double worst_d = -1.0;
            for (int i = 0; i < n; ++i) {
                if (count[run.assign[i]] <= 1) continue;
                const double dd = sq_dist(pts.row(i), centers.row(run.assign[i]));
                if (dd > worst_d) {
                    worst_d = dd;
                    worst = i;
                }
            }
            if (worst < 0) break;
            --count[run.assign[worst]];
            run.assign[worst] = c;
            count[c] = 1;
            std::copy(pts.row(worst).begin(), pts.row(worst).end(), centers.row(c).begin());
            changed = true;
        }
        if (!changed) break;
    }

    run.wcss = 0.0;
    for (int i = 0; i < n; ++i) run.wcss += sq_dist(pts.row(i), centers.row(run.assign[i]));
    return run;
}

} // namespace

Partition kmeans(const DenseMatrix& points, int k, std::uint64_t seed, KMeansConfig cfg) {
    const int n = points.rows;
    if (k < 1) throw std::invalid_argument("kmeans: k must be positive");
    if (k > n) throw std::invalid_argument("kmeans: k exceeds the number of points");
    if (points.cols < 1) throw std::invalid_argument("kmeans: need at least one dimension");

    KMeansRun best;
    for (int trial = 0; trial < std::max(1, cfg.n_init); ++trial) {
        Rng rng(split_seed(seed, 0x736d, trial));
        KMeansRun run = kmeans_single(points, k, rng, cfg.max_iter);
        if (run.wcss < best.wcss) best = std::move(run);
    }
    Partition p;
    p.labels = std::move(best.assign);
    p.k = k;
    return p;
}

double kmeans_wcss(const DenseMatrix& points, const Partition& p) {
    const int n = points.rows, d = points.cols;
    DenseMatrix centers(p.k, d);
    std::vector<int> count(p.k, 0);
    for (int i = 0; i < n; ++i) {
        ++count[p.labels[i]];
        auto dst = centers.row(p.labels[i]);
        auto src = points.row(i);
        for (int c = 0; c < d; ++c) dst[c] += src[c];
    }
    for (int c = 0; c < p.k; ++c)
        if (count[c] > 0)
            for (int j = 0; j < d; ++j) centers(c, j) /= count[c];
    double wcss = 0.0;
    for (int i = 0; i < n; ++i) wcss += sq_dist(points.row(i), centers.row(p.labels[i]));
    return wcss;
}

DenseMatrix spectral_embedding(const Graph& g, const DiagonalCentrality& diag, double e2,
                               double e3, int C, bool by_modulus, int dense_limit) {
    const int n = g.node_count();
    if (C < 1 || C > n) throw std::invalid_argument("spectral_embedding: invalid cluster count");
    EigPairs eig = cgso_eigs(g, diag, e2, e3, dense_limit);

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    if (by_modulus) {
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return std::abs(eig.eigenvalues[a]) > std::abs(eig.eigenvalues[b]);
        });
    } else {
        std::reverse(order.begin(), order.end()); // ascending -> descending
    }

    DenseMatrix rows(n, C);
    for (int c = 0; c < C; ++c)
        for (int i = 0; i < n; ++i) rows(i, c) = eig.eigenvectors(i, order[c]);
    return rows;
}

Partition spectral_cluster(const Graph& g, const DiagonalCentrality& diag, double e2, double e3,
                           int C, std::uint64_t seed, SpectralClusterOptions opts) {
    DenseMatrix rows = spectral_embedding(g, diag, e2, e3, C, opts.by_modulus, opts.dense_limit);
    return kmeans(rows, C, seed, opts.kmeans);
}

namespace {

struct Contingency {
    int r = 0, c = 0;
    long long n = 0;
    std::vector<std::vector<long long>> cells;
    std::vector<long long> row_sum, col_sum;
};

Contingency contingency_table(const Partition& a, const Partition& b) {
    if (a.labels.size() != b.labels.size())
        throw std::invalid_argument("partition comparison: length mismatch");
    if (a.labels.empty()) throw std::invalid_argument("partition comparison: empty partitions");
    Contingency t;
    t.r = a.k;
    t.c = b.k;
    t.n = static_cast<long long>(a.labels.size());
    t.cells.assign(t.r, std::vector<long long>(t.c, 0));
    for (std::size_t i = 0; i < a.labels.size(); ++i) {
        if (a.labels[i] < 0 || a.labels[i] >= t.r || b.labels[i] < 0 || b.labels[i] >= t.c)
            throw std::invalid_argument("partition comparison: label out of range");
        ++t.cells[a.labels[i]][b.labels[i]];
    }
    t.row_sum.assign(t.r, 0);
    t.col_sum.assign(t.c, 0);
    for (int i = 0; i < t.r; ++i)
        for (int j = 0; j < t.c; ++j) {
            t.row_sum[i] += t.cells[i][j];
            t.col_sum[j] += t.cells[i][j];
        }
    return t;
}

bool same_partition(const Contingency& t) {
    // Identical up to label permutation: every row and column hits one cell.
    for (int i = 0; i < t.r; ++i) {
        for (int j = 0; j < t.c; ++j) {
            if (t.cells[i][j] == 0) continue;
            if (t.cells[i][j] != t.row_sum[i] || t.cells[i][j] != t.col_sum[j]) return false;
        }
    }
    return true;
}

} // namespace

double ami(const Partition& a, const Partition& b) {
    const Contingency t = contingency_table(a, b);
    const double n = static_cast<double>(t.n);

    double h_a = 0.0, h_b = 0.0;
    for (long long s : t.row_sum)
        if (s > 0) h_a -= (s / n) * std::log(s / n);
    for (long long s : t.col_sum)
        if (s > 0) h_b -= (s / n) * std::log(s / n);

    double mi = 0.0;
    for (int i = 0; i < t.r; ++i)
        for (int j = 0; j < t.c; ++j) {
            const long long nij = t.cells[i][j];
            if (nij == 0) continue;
            mi += (nij / n) * std::log(n * nij / (static_cast<double>(t.row_sum[i]) * t.col_sum[j]));
        }

    // Expected MI under the hypergeometric model of random labelings with
    // fixed marginals.
    std::vector<double> lf(static_cast<std::size_t>(t.n) + 1, 0.0);
    for (long long i = 2; i <= t.n; ++i) lf[i] = lf[i - 1] + std::log(static_cast<double>(i));
    double emi = 0.0;
    for (int i = 0; i < t.r; ++i) {
        const long long ai = t.row_sum[i];
        if (ai == 0) continue;
        for (int j = 0; j < t.c; ++j) {
            const long long bj = t.col_sum[j];
            if (bj == 0) continue;
            const long long lo = std::max(1LL, ai + bj - t.n);
            const long long hi = std::min(ai, bj);
            for (long long nij = lo; nij <= hi; ++nij) {
                const double log_p = lf[ai] + lf[bj] + lf[t.n - ai] + lf[t.n - bj] - lf[t.n] -
                                     lf[nij] - lf[ai - nij] - lf[bj - nij] -
                                     lf[t.n - ai - bj + nij];
                emi += (nij / n) * std::log(n * nij / (static_cast<double>(ai) * bj)) *
                       std::exp(log_p);
            }
        }
    }

    const double denom = std::max(h_a, h_b) - emi;
    if (std::abs(denom) < 1e-12) return same_partition(t) ? 1.0 : 0.0;
    return (mi - emi) / denom;
}

double ari(const Partition& a, const Partition& b) {
    const Contingency t = contingency_table(a, b);
    auto choose2 = [](long long x) -> long double {
        return static_cast<long double>(x) * (x - 1) / 2.0L;
    };
    long double index = 0.0L;
    for (int i = 0; i < t.r; ++i)
        for (int j = 0; j < t.c; ++j) index += choose2(t.cells[i][j]);
    long double sum_a = 0.0L, sum_b = 0.0L;
    for (long long s : t.row_sum) sum_a += choose2(s);
    for (long long s : t.col_sum) sum_b += choose2(s);
    const long double total = choose2(t.n);
    if (total == 0.0L) return same_partition(t) ? 1.0 : 0.0;
    const long double expected = sum_a * sum_b / total;
    const long double max_index = 0.5L * (sum_a + sum_b);
    if (std::abs(static_cast<double>(max_index - expected)) < 1e-12)
        return same_partition(t) ? 1.0 : 0.0;
    return static_cast<double>((index - expected) / (max_index - expected));
}

namespace {

std::vector<double> linspace(std::pair<double, double> range, int steps) {
    if (steps < 1) throw std::invalid_argument("heatmap: steps must be positive");
    std::vector<double> out;
    if (steps == 1) {
        out.push_back(range.first);
        return out;
    }
    for (int i = 0; i < steps; ++i)
        out.push_back(range.first + (range.second - range.first) * i / (steps - 1));
    return out;
}

} // namespace

HeatmapGrid heatmap(const Graph& g, const DiagonalCentrality& diag, const Partition& truth,
                    std::pair<double, double> e2_range, std::pair<double, double> e3_range,
                    int steps, int repeats, std::uint64_t seed, int dense_limit) {
    if (repeats < 1) throw std::invalid_argument("heatmap: repeats must be positive");
    HeatmapGrid grid;
    grid.e2_values = linspace(e2_range, steps);
    grid.e3_values = linspace(e3_range, steps);
    grid.repeats = repeats;
    grid.seed = seed;
    const int C = truth.k;

    const std::size_t ni = grid.e2_values.size(), nj = grid.e3_values.size();
    grid.ami_mean.assign(ni, std::vector<double>(nj, 0.0));
    grid.ami_std = grid.ami_mean;
    grid.ari_mean = grid.ami_mean;
    grid.ari_std = grid.ami_mean;

    for (std::size_t i = 0; i < ni; ++i) {
        for (std::size_t j = 0; j < nj; ++j) {
            // The embedding is deterministic; only the k-means seed varies
            // across repeats.
            DenseMatrix rows = spectral_embedding(g, diag, grid.e2_values[i], grid.e3_values[j],
                                                  C, false, dense_limit);
            std::vector<double> amis(repeats), aris(repeats);
            for (int rep = 0; rep < repeats; ++rep) {
                Partition part = kmeans(rows, C, split_seed(seed, i * nj + j, rep));
                amis[rep] = ami(part, truth);
                aris[rep] = ari(part, truth);
            }
            auto mean_std = [&](const std::vector<double>& v, double& mean, double& sd) {
                mean = std::accumulate(v.begin(), v.end(), 0.0) / v.size();
                double acc = 0.0;
                for (double x : v) acc += (x - mean) * (x - mean);
                sd = std::sqrt(acc / v.size());
            };
            mean_std(amis, grid.ami_mean[i][j], grid.ami_std[i][j]);
            mean_std(aris, grid.ari_mean[i][j], grid.ari_std[i][j]);
        }
    }
    return grid;
}

} // namespace cgso
