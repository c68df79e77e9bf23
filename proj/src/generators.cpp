#include "cgso/generators.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "cgso/rng.hpp"

namespace cgso {

namespace {

void validate_ba(const BaParams& p) {
    if (p.n0 < 1 || p.n0 >= p.n) throw std::invalid_argument("generate_ba: need 1 <= n0 < n");
    const std::int64_t capacity =
        static_cast<std::int64_t>(p.n0) * (p.n0 - 1) / 2; // simple-graph capacity
    if (p.r0 < 0 || p.r0 > capacity)
        throw std::invalid_argument("generate_ba: r0 must lie in [0, n0(n0-1)/2]");
    if (p.r < 1 || p.r > p.n0) throw std::invalid_argument("generate_ba: need 1 <= r <= n0");
}

// r0 distinct unordered pairs among the first n0 nodes, uniform over pair
// sets. Enumerates pair indices and partially Fisher-Yates shuffles; exact
// and deterministic for the small seed graphs used here.
std::vector<std::pair<int, int>> seed_edges(int n0, std::int64_t r0, Rng& rng) {
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(static_cast<std::size_t>(n0) * (n0 - 1) / 2);
    for (int u = 0; u < n0; ++u)
        for (int v = u + 1; v < n0; ++v) pairs.emplace_back(u, v);
    for (std::int64_t i = 0; i < r0; ++i) {
        const std::size_t j =
            i + static_cast<std::size_t>(rng.next_below(pairs.size() - static_cast<std::size_t>(i)));
        std::swap(pairs[static_cast<std::size_t>(i)], pairs[j]);
    }
    pairs.resize(static_cast<std::size_t>(r0));
    return pairs;
}

} // namespace

Graph generate_ba(const BaParams& p) {
    validate_ba(p);
    Rng rng(split_seed(p.seed, 0xba5eed));

    std::vector<std::pair<int, int>> edges = seed_edges(p.n0, p.r0, rng);
    std::vector<std::int64_t> degree(p.n, 0);
    for (auto [u, v] : edges) {
        ++degree[u];
        ++degree[v];
    }
    std::int64_t total_degree = 2 * p.r0;

    std::vector<char> chosen(p.n, 0);
    std::vector<int> picked;
    picked.reserve(p.r);
    for (int node = p.n0; node < p.n; ++node) {
        const int existing = node;
        if (p.r > existing)
            throw std::invalid_argument("generate_ba: r exceeds the current node count");
        picked.clear();
        for (int k = 0; k < p.r; ++k) {
            // Weight of the not-yet-chosen targets for this draw.
            std::int64_t avail_degree = total_degree;
            for (int t : picked) avail_degree -= degree[t];
            int target = -1;
            if (avail_degree > 0) {
                std::int64_t ticket =
                    static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(avail_degree)));
                for (int u = 0; u < existing; ++u) {
                    if (chosen[u]) continue;
                    ticket -= degree[u];
                    if (ticket < 0) {
                        target = u;
                        break;
                    }
                }
            } else {
                // Total degree zero among remaining candidates: uniform draw.
                std::int64_t remaining = existing - static_cast<std::int64_t>(picked.size());
                std::int64_t ticket =
                    static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(remaining)));
                for (int u = 0; u < existing; ++u) {
                    if (chosen[u]) continue;
                    if (ticket-- == 0) {
                        target = u;
                        break;
                    }
                }
            }
            chosen[target] = 1;
            picked.push_back(target);
        }
        for (int t : picked) {
            edges.emplace_back(node, t);
            chosen[t] = 0;
            ++degree[t];
            ++total_degree;
        }
        degree[node] += p.r;
        total_degree += p.r;
    }

    Graph g = Graph::from_edges(p.n, edges);
    const std::int64_t expected = p.r0 + static_cast<std::int64_t>(p.r) * (p.n - p.n0);
    if (g.edge_count() != expected)
        throw std::logic_error("generate_ba: edge count " + std::to_string(g.edge_count()) +
                               " differs from the closed form " + std::to_string(expected));
    return g;
}

double expected_avg_degree(std::int64_t n, std::int64_t n0, std::int64_t r0, std::int64_t r) {
    if (n <= 0) throw std::invalid_argument("expected_avg_degree: n must be positive");
    return 2.0 * static_cast<double>(r) + 2.0 * static_cast<double>(r0) / static_cast<double>(n) -
           2.0 * static_cast<double>(n0) * static_cast<double>(r) / static_cast<double>(n);
}

SbbamResult generate_sbbam(const SbbamParams& p) {
    const std::size_t k = p.block_sizes.size();
    if (k < 1) throw std::invalid_argument("generate_sbbam: need at least one block");
    if (p.r_per_block.size() != k)
        throw std::invalid_argument("generate_sbbam: r_per_block size mismatch");
    if (p.inter_p.size() != k)
        throw std::invalid_argument("generate_sbbam: inter_p must be K x K");
    for (const auto& row : p.inter_p) {
        if (row.size() != k) throw std::invalid_argument("generate_sbbam: inter_p must be K x K");
        for (double q : row)
            if (!(q >= 0.0 && q <= 1.0))
                throw std::invalid_argument("generate_sbbam: probabilities must lie in [0,1]");
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (p.inter_p[i][j] != p.inter_p[j][i])
                throw std::invalid_argument("generate_sbbam: inter_p must be symmetric");
    if (!p.n0_per_block.empty() && p.n0_per_block.size() != k)
        throw std::invalid_argument("generate_sbbam: n0_per_block size mismatch");
    if (!p.r0_per_block.empty() && p.r0_per_block.size() != k)
        throw std::invalid_argument("generate_sbbam: r0_per_block size mismatch");

    SbbamResult out;
    std::vector<int> offset(k + 1, 0);
    for (std::size_t b = 0; b < k; ++b) {
        if (p.block_sizes[b] < 2)
            throw std::invalid_argument("generate_sbbam: blocks need at least 2 nodes");
        offset[b + 1] = offset[b] + p.block_sizes[b];
    }
    const int n = offset[k];

    std::vector<std::pair<int, int>> edges;
    for (std::size_t b = 0; b < k; ++b) {
        BaParams bp;
        bp.n = p.block_sizes[b];
        bp.r = p.r_per_block[b];
        bp.n0 = p.n0_per_block.empty() ? std::max(bp.r, 5) : p.n0_per_block[b];
        bp.n0 = std::min(bp.n0, bp.n - 1);
        if (bp.n0 < bp.r) throw std::invalid_argument("generate_sbbam: block too small for r");
        bp.r0 = p.r0_per_block.empty() ? bp.n0 - 1 : p.r0_per_block[b];
        bp.seed = split_seed(p.seed, 0xb10c, b);
        out.resolved_n0.push_back(bp.n0);
        out.resolved_r0.push_back(bp.r0);
        Graph block = generate_ba(bp);
        for (auto [u, v] : block.edges()) edges.emplace_back(offset[b] + u, offset[b] + v);
    }

    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            const double q = p.inter_p[i][j];
            if (q <= 0.0) continue;
            Rng rng(split_seed(p.seed, 0xc405, i * k + j));
            for (int u = offset[i]; u < offset[i + 1]; ++u)
                for (int v = offset[j]; v < offset[j + 1]; ++v)
                    if (rng.next_unit() < q) edges.emplace_back(u, v);
        }
    }

    out.graph = Graph::from_edges(n, edges);
    out.truth.labels.resize(n);
    out.truth.k = static_cast<int>(k);
    for (std::size_t b = 0; b < k; ++b)
        for (int u = offset[b]; u < offset[b + 1]; ++u)
            out.truth.labels[u] = static_cast<int>(b);
    return out;
}

} // namespace cgso
