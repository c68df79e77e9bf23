#include "cgso/graph.hpp"

#include <algorithm>
#include <charconv>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace cgso {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw std::invalid_argument("Graph: negative node count");
    std::vector<std::pair<int, int>> dir;
    dir.reserve(edges.size() * 2);
    for (auto [u, v] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw std::invalid_argument("Graph: edge endpoint out of range");
        if (u == v) continue;
        dir.emplace_back(u, v);
        dir.emplace_back(v, u);
    }
    std::sort(dir.begin(), dir.end());
    dir.erase(std::unique(dir.begin(), dir.end()), dir.end());

    Graph g;
    g.n_ = n;
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    g.adj_.reserve(dir.size());
    std::size_t pos = 0;
    for (int u = 0; u < n; ++u) {
        while (pos < dir.size() && dir[pos].first == u) {
            g.adj_.push_back(dir[pos].second);
            ++pos;
        }
        g.offsets_[static_cast<std::size_t>(u) + 1] = static_cast<std::int64_t>(g.adj_.size());
    }
    g.m_ = static_cast<std::int64_t>(g.adj_.size()) / 2;
    return g;
}

bool Graph::has_edge(int u, int v) const {
    auto nbrs = neighbors(u);
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int u = 0; u < n_; ++u)
        for (int v : neighbors(u))
            if (u < v) out.emplace_back(u, v);
    return out;
}

namespace {

bool parse_int(std::string_view tok, long long& out) {
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
    return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> toks;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) toks.push_back(line.substr(i, j - i));
        i = j;
    }
    return toks;
}

} // namespace

Graph parse_edge_list(std::string_view text, ParseStats* stats) {
    ParseStats local;
    long long header_n = -1;
    std::vector<std::pair<long long, long long>> raw;

    int line_no = 0;
    std::size_t pos = 0;
    bool first_content_line = true;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
        pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (first_content_line && toks[0] == "#") {
            if (toks.size() == 3 && toks[1] == "nodes") {
                long long n;
                if (!parse_int(toks[2], n) || n < 0)
                    throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                             ": bad node count header");
                header_n = n;
                local.had_header = true;
                first_content_line = false;
                continue;
            }
            throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                     ": unrecognized header");
        }
        first_content_line = false;
        if (toks[0].starts_with("#")) continue; // trailing comment lines
        if (toks.size() != 2)
            throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                     ": expected 'u v'");
        long long u, v;
        if (!parse_int(toks[0], u) || !parse_int(toks[1], v) || u < 0 || v < 0)
            throw std::runtime_error("parse error at line " + std::to_string(line_no) +
                                     ": malformed node id");
        if (u == v) {
            ++local.self_loops_dropped;
            continue;
        }
        raw.emplace_back(u, v);
    }

    if (raw.empty() && header_n < 0)
        throw std::runtime_error("parse error: no edges and no '# nodes N' header");

    int n;
    std::vector<std::pair<int, int>> edges;
    edges.reserve(raw.size());
    if (header_n >= 0) {
        for (auto [u, v] : raw) {
            if (u >= header_n || v >= header_n)
                throw std::runtime_error("parse error: node id exceeds declared node count");
        }
        n = static_cast<int>(header_n);
        for (auto [u, v] : raw) edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
    } else {
        // Compact ids in first-appearance order.
        std::unordered_map<long long, int> remap;
        remap.reserve(raw.size() * 2);
        for (auto [u, v] : raw) {
            for (long long x : {u, v})
                if (!remap.count(x)) {
                    int id = static_cast<int>(remap.size());
                    remap.emplace(x, id);
                }
        }
        n = static_cast<int>(remap.size());
        for (auto [u, v] : raw) edges.emplace_back(remap[u], remap[v]);
    }

    if (stats) *stats = local;
    return Graph::from_edges(n, edges);
}

std::string serialize_edge_list(const Graph& g) {
    std::ostringstream out;
    out << "# nodes " << g.node_count() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    return out.str();
}

ComponentLabels connected_components(const Graph& g) {
    const int n = g.node_count();
    ComponentLabels cl;
    cl.labels.assign(n, -1);
    std::vector<int> queue;
    for (int s = 0; s < n; ++s) {
        if (cl.labels[s] != -1) continue;
        const int id = cl.component_count++;
        cl.labels[s] = id;
        queue.assign(1, s);
        while (!queue.empty()) {
            int u = queue.back();
            queue.pop_back();
            for (int v : g.neighbors(u)) {
                if (cl.labels[v] == -1) {
                    cl.labels[v] = id;
                    queue.push_back(v);
                }
            }
        }
    }
    return cl;
}

InducedSubgraph largest_component(const Graph& g) {
    const int n = g.node_count();
    if (n < 1) throw std::invalid_argument("largest_component: empty graph");
    auto cl = connected_components(g);
    std::vector<std::int64_t> size(cl.component_count, 0);
    for (int u = 0; u < n; ++u) ++size[cl.labels[u]];
    // Components are discovered in order of their minimum node id, so the
    // first maximal-size component realizes the tie-break rule.
    int best = 0;
    for (int c = 1; c < cl.component_count; ++c)
        if (size[c] > size[best]) best = c;

    InducedSubgraph out;
    out.old_to_new.assign(n, -1);
    for (int u = 0; u < n; ++u) {
        if (cl.labels[u] == best) {
            out.old_to_new[u] = static_cast<int>(out.new_to_old.size());
            out.new_to_old.push_back(u);
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u) {
        if (out.old_to_new[u] == -1) continue;
        for (int v : g.neighbors(u))
            if (u < v) edges.emplace_back(out.old_to_new[u], out.old_to_new[v]);
    }
    out.graph = Graph::from_edges(static_cast<int>(out.new_to_old.size()), edges);
    return out;
}

} // namespace cgso
