#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cgso {

// Undirected simple graph in compressed sparse row form. Adjacency is
// symmetric, neighbor lists are sorted and duplicate-free, and no self-loops
// are stored. Instances are immutable after construction and safe to share
// across threads.
class Graph {
public:
    Graph() = default;

    // Symmetrizes, deduplicates and drops self-loops. Endpoints must lie in
    // [0, n).
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int node_count() const { return n_; }
    std::int64_t edge_count() const { return m_; } // unordered edges

    std::span<const int> neighbors(int u) const {
        return {adj_.data() + offsets_[u], static_cast<std::size_t>(offsets_[u + 1] - offsets_[u])};
    }
    int degree(int u) const { return static_cast<int>(offsets_[u + 1] - offsets_[u]); }
    bool has_edge(int u, int v) const;

    const std::vector<std::int64_t>& row_offsets() const { return offsets_; }
    const std::vector<int>& adjacency() const { return adj_; }

    // Sorted unique undirected edges with u < v.
    std::vector<std::pair<int, int>> edges() const;

private:
    int n_ = 0;
    std::int64_t m_ = 0;
    std::vector<std::int64_t> offsets_ = {0};
    std::vector<int> adj_;
};

struct ParseStats {
    int self_loops_dropped = 0;
    bool had_header = false;
};

// Text format: optional first line "# nodes N", then one whitespace-separated
// "u v" pair per line. Without a header, node ids are compacted to 0..n-1 in
// first-appearance order; with a header they are taken verbatim and must be
// < N. Malformed tokens raise with the offending line number; self-loops are
// dropped and tallied in stats.
Graph parse_edge_list(std::string_view text, ParseStats* stats = nullptr);

// Inverse of parse_edge_list: "# nodes N" header plus sorted unique edges
// with u < v.
std::string serialize_edge_list(const Graph& g);

struct ComponentLabels {
    std::vector<int> labels; // contiguous ids 0..component_count-1
    int component_count = 0;
};

ComponentLabels connected_components(const Graph& g);

struct InducedSubgraph {
    Graph graph;
    std::vector<int> old_to_new; // -1 for nodes outside the subgraph
    std::vector<int> new_to_old;
};

// Induced subgraph on the largest component; ties broken by the component
// containing the smallest node id.
InducedSubgraph largest_component(const Graph& g);

} // namespace cgso
