#include "cgso/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

namespace cgso {

std::string centrality_kind_name(CentralityKind k) {
    switch (k) {
    case CentralityKind::Degree: return "degree";
    case CentralityKind::KCore: return "kcore";
    case CentralityKind::PageRank: return "pagerank";
    case CentralityKind::WalkCount: return "walks";
    case CentralityKind::Custom: return "custom";
    }
    return "unknown";
}

CentralityVector degree_vector(const Graph& g) {
    CentralityVector c;
    c.kind = CentralityKind::Degree;
    c.values.resize(g.node_count());
    for (int u = 0; u < g.node_count(); ++u) c.values[u] = g.degree(u);
    return c;
}

CentralityVector kcore_numbers(const Graph& g) {
    const int n = g.node_count();
    std::vector<int> deg(n), core(n, 0);
    int max_deg = 0;
    for (int u = 0; u < n; ++u) {
        deg[u] = g.degree(u);
        max_deg = std::max(max_deg, deg[u]);
    }

    // Bucket sort nodes by degree, then peel in non-decreasing degree order.
    std::vector<int> bin(max_deg + 2, 0);
    for (int u = 0; u < n; ++u) ++bin[deg[u]];
    int start = 0;
    for (int d = 0; d <= max_deg; ++d) {
        int count = bin[d];
        bin[d] = start;
        start += count;
    }
    std::vector<int> order(n), pos(n);
    for (int u = 0; u < n; ++u) {
        pos[u] = bin[deg[u]]++;
        order[pos[u]] = u;
    }
    for (int d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
    if (max_deg >= 0) bin[0] = 0;

    for (int i = 0; i < n; ++i) {
        const int u = order[i];
        core[u] = deg[u];
        for (int v : g.neighbors(u)) {
            if (deg[v] > deg[u]) {
                // Move v to the front of its bucket, then shrink its degree.
                const int dv = deg[v];
                const int pv = pos[v];
                const int pw = bin[dv];
                const int w = order[pw];
                if (v != w) {
                    std::swap(order[pv], order[pw]);
                    pos[v] = pw;
                    pos[w] = pv;
                }
                ++bin[dv];
                --deg[v];
            }
        }
    }

    CentralityVector c;
    c.kind = CentralityKind::KCore;
    c.values.assign(core.begin(), core.end());
    return c;
}

CentralityVector pagerank(const Graph& g, double damping, double tol, int max_iter) {
    if (!(damping > 0.0 && damping < 1.0))
        throw std::invalid_argument("pagerank: damping must lie in (0,1)");
    const int n = g.node_count();
    if (n == 0) throw std::invalid_argument("pagerank: empty graph");

    std::vector<double> x(n, 1.0 / n), next(n);
    double residual = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
        double dangling = 0.0;
        for (int u = 0; u < n; ++u)
            if (g.degree(u) == 0) dangling += x[u];
        const double base = (1.0 - damping) / n + damping * dangling / n;
        std::fill(next.begin(), next.end(), base);
        for (int u = 0; u < n; ++u) {
            const int d = g.degree(u);
            if (d == 0) continue;
            const double share = damping * x[u] / d;
            for (int v : g.neighbors(u)) next[v] += share;
        }
        residual = 0.0;
        for (int i = 0; i < n; ++i) residual += std::abs(next[i] - x[i]);
        x.swap(next);
        if (residual < tol) {
            CentralityVector c;
            c.kind = CentralityKind::PageRank;
            c.values = std::move(x);
            c.damping = damping;
            c.tolerance = tol;
            return c;
        }
    }
    throw std::runtime_error("pagerank: no convergence after " + std::to_string(max_iter) +
                             " iterations (L1 residual " + std::to_string(residual) + ")");
}

CentralityVector walk_counts(const Graph& g, int length) {
    if (length < 1) throw std::invalid_argument("walk_counts: length must be >= 1");
    const int n = g.node_count();
    // Counts above 2^53 would no longer be exact as doubles.
    constexpr std::uint64_t kExactLimit = 1ULL << 53;

    std::vector<std::uint64_t> x(n, 1), next(n);
    for (int step = 0; step < length; ++step) {
        for (int u = 0; u < n; ++u) {
            std::uint64_t acc = 0;
            for (int v : g.neighbors(u)) {
                acc += x[v];
                if (acc > kExactLimit)
                    throw std::overflow_error(
                        "walk_counts: integer accumulator overflow at node " + std::to_string(u) +
                        "; use a floating-point accumulation for walks this long");
            }
            next[u] = acc;
        }
        x.swap(next);
    }

    CentralityVector c;
    c.kind = CentralityKind::WalkCount;
    c.walk_length = length;
    c.values.resize(n);
    for (int u = 0; u < n; ++u) c.values[u] = static_cast<double>(x[u]);
    return c;
}

CentralityVector compute_centrality(const Graph& g, CentralityKind kind, int walk_length,
                                    double damping, double tol, int max_iter) {
    switch (kind) {
    case CentralityKind::Degree: return degree_vector(g);
    case CentralityKind::KCore: return kcore_numbers(g);
    case CentralityKind::PageRank: return pagerank(g, damping, tol, max_iter);
    case CentralityKind::WalkCount: return walk_counts(g, walk_length);
    case CentralityKind::Custom: break;
    }
    throw std::invalid_argument("compute_centrality: unsupported kind");
}

DiagonalCentrality DiagonalCentrality::from_values(std::vector<double> values,
                                                   CentralityKind kind) {
    DiagonalCentrality d;
    d.source_kind = kind;
    d.entries = std::move(values);
    d.log_entries.resize(d.entries.size());
    for (std::size_t i = 0; i < d.entries.size(); ++i) {
        if (!(d.entries[i] > 0.0))
            throw std::domain_error("DiagonalCentrality: non-positive entry at node " +
                                    std::to_string(i));
        d.log_entries[i] = std::log(d.entries[i]);
    }
    return d;
}

DiagonalCentrality build_diagonal(const CentralityVector& c) {
    std::vector<double> entries(c.values.size());
    for (std::size_t i = 0; i < c.values.size(); ++i) {
        double v = c.values[i];
        if (c.kind == CentralityKind::PageRank) {
            if (v >= 1.0)
                throw std::domain_error("build_diagonal: PageRank score >= 1 at node " +
                                        std::to_string(i));
            v = 1.0 / (1.0 - v);
        }
        if (!(v > 0.0))
            throw std::domain_error("build_diagonal: " + centrality_kind_name(c.kind) +
                                    " centrality is zero at node " + std::to_string(i) +
                                    " (isolated node?); V must be positive definite");
        entries[i] = v;
    }
    return DiagonalCentrality::from_values(std::move(entries), c.kind);
}

} // namespace cgso
