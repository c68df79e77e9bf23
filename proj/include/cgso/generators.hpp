#pragma once

#include <cstdint>
#include <vector>

#include "cgso/graph.hpp"
#include "cgso/partition.hpp"

namespace cgso {

// Preferential-attachment parameters: n0 seed nodes carrying r0 uniformly
// sampled distinct edges, then each arriving node attaches to r distinct
// existing nodes with probability proportional to current degree. The final
// edge count is exactly r0 + r (n - n0).
struct BaParams {
    int n = 0;
    int n0 = 0;
    std::int64_t r0 = 0;
    int r = 1;
    std::uint64_t seed = 0;
};

Graph generate_ba(const BaParams& p);

// Closed form 2r + 2 r0 / n - 2 n0 r / n for the average degree implied by
// the exact edge count above.
double expected_avg_degree(std::int64_t n, std::int64_t n0, std::int64_t r0, std::int64_t r);

// K preferential-attachment blocks on disjoint contiguous node ranges, plus
// independent cross-block edges: each pair (u in block i, v in block j),
// i < j, becomes an edge with probability inter_p[i][j]. The diagonal of
// inter_p is ignored (within-block randomness comes from the block model
// alone). Per-block seed-graph parameters default to n0 = max(r, 5),
// r0 = n0 - 1 when left empty.
struct SbbamParams {
    std::vector<int> block_sizes;
    std::vector<int> r_per_block;
    std::vector<std::vector<double>> inter_p;
    std::vector<int> n0_per_block;          // optional override
    std::vector<std::int64_t> r0_per_block; // optional override
    std::uint64_t seed = 0;
};

struct SbbamResult {
    Graph graph;
    Partition truth; // block membership, contiguous ranges
    std::vector<int> resolved_n0;
    std::vector<std::int64_t> resolved_r0;
};

SbbamResult generate_sbbam(const SbbamParams& p);

} // namespace cgso
