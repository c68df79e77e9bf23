#include "cgso/verify.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <sstream>

#include "cgso/clustering.hpp"
#include "cgso/generators.hpp"
#include "cgso/nn.hpp"
#include "cgso/operators.hpp"
#include "cgso/spectral.hpp"

namespace cgso {

Graph random_connected_graph(int n, double extra_edge_prob, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    for (int i = 1; i < n; ++i)
        edges.emplace_back(i, static_cast<int>(rng.next_below(static_cast<std::uint64_t>(i))));
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_unit() < extra_edge_prob) edges.emplace_back(u, v);
    return Graph::from_edges(n, edges);
}

Graph random_disconnected_graph(const std::vector<int>& part_sizes, double extra_edge_prob,
                                Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    int offset = 0;
    for (int size : part_sizes) {
        Graph part = random_connected_graph(size, extra_edge_prob, rng);
        for (auto [u, v] : part.edges()) edges.emplace_back(offset + u, offset + v);
        offset += size;
    }
    return Graph::from_edges(offset, edges);
}

std::vector<DiagonalCentrality> all_centrality_diagonals(const Graph& g) {
    std::vector<DiagonalCentrality> out;
    out.push_back(build_diagonal(degree_vector(g)));
    out.push_back(build_diagonal(kcore_numbers(g)));
    out.push_back(build_diagonal(pagerank(g)));
    out.push_back(build_diagonal(walk_counts(g, 2)));
    return out;
}

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

Graph suite_graph(Rng& rng, int n_min, int n_max) {
    const int n = n_min + static_cast<int>(rng.next_below(n_max - n_min + 1));
    const double p = 0.05 + 0.25 * rng.next_unit();
    return random_connected_graph(n, p, rng);
}

Graph induce(const Graph& g, const std::vector<int>& nodes) {
    std::vector<int> old_to_new(g.node_count(), -1);
    for (std::size_t i = 0; i < nodes.size(); ++i) old_to_new[nodes[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> edges;
    for (int u : nodes)
        for (int v : g.neighbors(u))
            if (u < v && old_to_new[v] != -1) edges.emplace_back(old_to_new[u], old_to_new[v]);
    return Graph::from_edges(static_cast<int>(nodes.size()), edges);
}

} // namespace

CheckResult check_self_adjointness(std::uint64_t seed, int graphs, int n_min, int n_max,
                                   double tol) {
    Rng rng(split_seed(seed, 0x5e1f));
    double worst = 0.0;
    for (int t = 0; t < graphs; ++t) {
        Graph g = suite_graph(rng, n_min, n_max);
        for (const auto& diag : all_centrality_diagonals(g)) {
            DenseMatrix m = markov_operator(g, diag).materialize_dense();
            const int n = g.node_count();
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    const double wij = diag.entries[i] * m(i, j);
                    const double wji = diag.entries[j] * m(j, i);
                    worst = std::max(worst, std::abs(wij - wji));
                }
        }
    }
    return {"self-adjointness ||V M - (V M)^T||_inf", worst < tol,
            "max deviation " + fmt(worst) + " over " + std::to_string(graphs) +
                " graphs x 4 centralities (tol " + fmt(tol) + ")"};
}

CheckResult check_eig_residuals(std::uint64_t seed, int graphs, int n_min, int n_max) {
    Rng rng(split_seed(seed, 0x4e51));
    double worst = 0.0;
    for (int t = 0; t < graphs; ++t) {
        Graph g = suite_graph(rng, n_min, n_max);
        for (const auto& diag : all_centrality_diagonals(g)) {
            CgsoOperator op = markov_operator(g, diag);
            EigPairs e = cgso_eigs(g, diag, -1.0, 0.0);
            double op_norm = 0.0;
            for (int i = 0; i < g.node_count(); ++i)
                op_norm = std::max(op_norm, g.degree(i) / diag.entries[i]);
            const int n = g.node_count();
            std::vector<double> vec(n), mv(n);
            for (int k = 0; k < n; ++k) {
                for (int i = 0; i < n; ++i) vec[i] = e.eigenvectors(i, k);
                op.apply(vec, mv);
                double resid = 0.0;
                for (int i = 0; i < n; ++i)
                    resid = std::max(resid, std::abs(mv[i] - e.eigenvalues[k] * vec[i]));
                worst = std::max(worst, resid / std::max(1e-300, op_norm));
            }
        }
    }
    return {"eigenpair residuals ||M u - lambda u||_inf / ||M||_inf", worst < 1e-8,
            "max relative residual " + fmt(worst)};
}

CheckResult check_analytic_moments(std::uint64_t seed, int graphs, int n_min, int n_max,
                                   double tol) {
    Rng rng(split_seed(seed, 0x303e));
    double worst = 0.0;
    for (int t = 0; t < graphs; ++t) {
        Graph g = suite_graph(rng, n_min, n_max);
        for (const auto& diag : all_centrality_diagonals(g)) {
            EigPairs e = cgso_eigs(g, diag, -1.0, 0.0);
            const int n = g.node_count();
            double mean = 0.0, sq = 0.0;
            for (double l : e.eigenvalues) {
                mean += l;
                sq += l * l;
            }
            mean /= n;
            const double sd = std::sqrt(std::max(0.0, sq / n - mean * mean));
            const Moments m = analytic_moments(g, diag);
            worst = std::max({worst, std::abs(mean - m.mean), std::abs(sd - m.stddev)});
        }
    }
    return {"analytic spectrum moments vs eigendecomposition", worst < tol,
            "max deviation " + fmt(worst) + " (tol " + fmt(tol) + ")"};
}

CheckResult check_eigenvalue_bounds(std::uint64_t seed, int graphs, int n_min, int n_max) {
    Rng rng(split_seed(seed, 0xb0dd));
    double worst_slack = -1e300;
    int gamma_regime = 0;
    for (int t = 0; t < graphs; ++t) {
        Graph g = suite_graph(rng, n_min, n_max);
        for (const auto& diag : all_centrality_diagonals(g)) {
            // eigenvalue_bounds throws internally if either certified bound
            // fails.
            EigenvalueBounds b = eigenvalue_bounds(g, diag);
            worst_slack = std::max(worst_slack, b.spectral_radius - b.gershgorin);
            if (b.gamma >= 1.0) ++gamma_regime;
        }
    }

    // Documented counterexample: unit centrality on the triangle has
    // radius 2 above gamma = 1/2, while the row-sum bound still holds.
    Graph k3 = Graph::from_edges(3, {{0, 1}, {1, 2}, {0, 2}});
    auto unit = DiagonalCentrality::from_values({1.0, 1.0, 1.0});
    EigenvalueBounds cb = eigenvalue_bounds(k3, unit);
    const bool counterexample_ok = std::abs(cb.gamma - 0.5) < 1e-12 &&
                                   std::abs(cb.spectral_radius - 2.0) < 1e-8 &&
                                   cb.spectral_radius > cb.gamma &&
                                   cb.spectral_radius <= cb.gershgorin + 1e-8;

    return {"spectral radius bounds (row-sum always, gamma when gamma >= 1)",
            worst_slack <= 1e-8 && counterexample_ok,
            "max radius-over-rowsum slack " + fmt(worst_slack) + "; gamma>=1 cases " +
                std::to_string(gamma_regime) + "; unit-centrality triangle counterexample " +
                (counterexample_ok ? "confirmed" : "FAILED")};
}

CheckResult check_component_spectra(std::uint64_t seed, int graphs, double tol) {
    Rng rng(split_seed(seed, 0xc03c));
    double worst = 0.0;
    for (int t = 0; t < graphs; ++t) {
        const int parts = 2 + static_cast<int>(rng.next_below(3));
        std::vector<int> sizes;
        for (int p = 0; p < parts; ++p)
            sizes.push_back(3 + static_cast<int>(rng.next_below(10)));
        Graph g = random_disconnected_graph(sizes, 0.3, rng);
        for (const auto& diag : all_centrality_diagonals(g)) {
            std::vector<double> whole = cgso_eigs(g, diag, -1.0, 0.0).eigenvalues;
            auto comps = connected_components(g);
            std::vector<double> merged;
            for (int c = 0; c < comps.component_count; ++c) {
                std::vector<int> nodes;
                for (int u = 0; u < g.node_count(); ++u)
                    if (comps.labels[u] == c) nodes.push_back(u);
                Graph sub = induce(g, nodes);
                std::vector<double> restricted;
                for (int u : nodes) restricted.push_back(diag.entries[u]);
                auto sub_diag = DiagonalCentrality::from_values(std::move(restricted));
                auto eigs = cgso_eigs(sub, sub_diag, -1.0, 0.0).eigenvalues;
                merged.insert(merged.end(), eigs.begin(), eigs.end());
            }
            std::sort(merged.begin(), merged.end());
            for (std::size_t i = 0; i < whole.size(); ++i)
                worst = std::max(worst, std::abs(whole[i] - merged[i]));
        }
    }
    return {"per-component spectra union equals whole-graph spectrum", worst < tol,
            "max multiset deviation " + fmt(worst) + " (tol " + fmt(tol) + ")"};
}

CheckResult check_component_recovery(std::uint64_t seed, int graphs) {
    Rng rng(split_seed(seed, 0x4ec0));
    double worst_ami = 1.0;
    for (int t = 0; t < graphs; ++t) {
        const int parts = 2 + static_cast<int>(rng.next_below(3));
        std::vector<int> sizes;
        Partition truth;
        for (int p = 0; p < parts; ++p) {
            const int s = 3 + static_cast<int>(rng.next_below(10));
            sizes.push_back(s);
            for (int i = 0; i < s; ++i) truth.labels.push_back(p);
        }
        truth.k = parts;
        Graph g = random_disconnected_graph(sizes, 0.3, rng);
        auto diag = build_diagonal(degree_vector(g));
        Partition part = spectral_cluster(g, diag, -1.0, 0.0, parts, split_seed(seed, 0xaa, t));
        worst_ami = std::min(worst_ami, ami(part, truth));
    }
    return {"component recovery: mean-aggregation spectral clustering, C = components",
            worst_ami > 1.0 - 1e-9, "min AMI " + fmt(worst_ami) + " over " +
                std::to_string(graphs) + " disconnected graphs"};
}

CheckResult check_cheeger_exhaustive(int max_n) {
    long long graphs_checked = 0, violations = 0;
    double worst_margin = 1e300; // min(rhs - lambda1)
    for (int n = 2; n <= max_n; ++n) {
        const int bits = n * (n - 1) / 2;
        std::vector<std::pair<int, int>> pair_of_bit;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) pair_of_bit.emplace_back(u, v);
        for (std::uint32_t mask = 0; mask < (1u << bits); ++mask) {
            // Bitset connectivity filter before building anything.
            std::array<std::uint32_t, 16> adj{};
            for (int b = 0; b < bits; ++b)
                if (mask & (1u << b)) {
                    adj[pair_of_bit[b].first] |= 1u << pair_of_bit[b].second;
                    adj[pair_of_bit[b].second] |= 1u << pair_of_bit[b].first;
                }
            std::uint32_t seen = 1, frontier = 1;
            while (frontier) {
                std::uint32_t next = 0;
                for (std::uint32_t rest = frontier; rest;) {
                    const int u = std::countr_zero(rest);
                    rest &= rest - 1;
                    next |= adj[u];
                }
                frontier = next & ~seen;
                seen |= next;
            }
            if (std::popcount(seen) != n) continue;

            std::vector<std::pair<int, int>> edges;
            for (int b = 0; b < bits; ++b)
                if (mask & (1u << b)) edges.push_back(pair_of_bit[b]);
            Graph g = Graph::from_edges(n, edges);
            for (const auto& diag : all_centrality_diagonals(g)) {
                CheegerReport rep = cheeger_bruteforce(g, diag);
                ++graphs_checked;
                if (!rep.holds_edge) ++violations;
                worst_margin = std::min(worst_margin, rep.bound_rhs_edge - rep.lambda1);
            }
        }
    }
    return {"Cheeger bound lambda1 <= 2N(v+^2/v-) h_v (edge boundary), exhaustive n <= " +
                std::to_string(max_n),
            violations == 0,
            std::to_string(graphs_checked) + " (graph, centrality) cases, " +
                std::to_string(violations) + " violations, min slack " + fmt(worst_margin)};
}

CheckResult check_ba_edge_count(std::uint64_t seed, int draws) {
    Rng rng(split_seed(seed, 0xbaed));
    double worst = 0.0;
    for (int t = 0; t < draws; ++t) {
        BaParams p;
        p.n = 20 + static_cast<int>(rng.next_below(181));
        p.n0 = 2 + static_cast<int>(rng.next_below(9));
        p.r = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(p.n0)));
        const std::int64_t cap = static_cast<std::int64_t>(p.n0) * (p.n0 - 1) / 2;
        p.r0 = static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(cap) + 1));
        p.seed = split_seed(seed, 0xba, t);
        Graph g = generate_ba(p);
        const std::int64_t expected = p.r0 + static_cast<std::int64_t>(p.r) * (p.n - p.n0);
        if (g.edge_count() != expected)
            return {"preferential-attachment exact edge count", false,
                    "draw " + std::to_string(t) + ": got " + std::to_string(g.edge_count()) +
                        ", expected " + std::to_string(expected)};
        const double avg = 2.0 * static_cast<double>(g.edge_count()) / p.n;
        worst = std::max(worst, std::abs(avg - expected_avg_degree(p.n, p.n0, p.r0, p.r)));
    }
    return {"preferential-attachment edge count and average degree", worst < 1e-12,
            std::to_string(draws) + " draws, max average-degree deviation " + fmt(worst)};
}

CheckResult check_gradients(std::uint64_t seed, int instances) {
    double worst_rel = 0.0;
    for (int t = 0; t < instances; ++t) {
        Rng rng(split_seed(seed, 0x94ad, t));
        const int n = 6 + static_cast<int>(rng.next_below(10));
        Graph g = random_connected_graph(n, 0.3, rng);
        const int d0 = 2 + static_cast<int>(rng.next_below(3));
        const int classes = 2 + static_cast<int>(rng.next_below(2));
        DenseMatrix x(n, d0);
        for (double& v : x.data) v = rng.next_normal();
        std::vector<int> labels(n), mask;
        for (int i = 0; i < n; ++i) {
            labels[i] = static_cast<int>(rng.next_below(classes));
            mask.push_back(i);
        }

        auto random_params = [&]() {
            CgsoParams p;
            p.m1 = 2.0 * rng.next_unit() - 1.0;
            p.m2 = 2.0 * rng.next_unit() - 1.0;
            p.m3 = 2.0 * rng.next_unit() - 1.0;
            p.e1 = 2.0 * rng.next_unit() - 1.0;
            p.e2 = 2.0 * rng.next_unit() - 1.0;
            p.e3 = 2.0 * rng.next_unit() - 1.0;
            p.a = 2.0 * rng.next_unit() - 1.0;
            return p;
        };
        std::vector<OperatorTermSpec> terms;
        terms.push_back({build_diagonal(kcore_numbers(g)), random_params()});
        if (t % 2 == 1) terms.push_back({build_diagonal(degree_vector(g)), random_params()});

        const double h = 1e-5;
        auto rel_err = [](double a, double b) {
            const double diff = std::abs(a - b);
            if (diff < 1e-8) return 0.0;
            return diff / std::max(std::abs(a), std::abs(b));
        };

        {
            CgcnModel model = make_cgcn({d0, 5, classes}, terms, 0.0, split_seed(seed, 0x71, t));
            Gradients grads;
            cgcn_loss_and_grads(model, g, x, labels, mask, 0, false, grads);
            std::vector<double> flat;
            for (const auto& w : grads.weights)
                for (double v : w.data) flat.push_back(v);
            for (const auto& p : grads.cgso)
                for (double v : {p.m1, p.m2, p.m3, p.e1, p.e2, p.e3, p.a}) flat.push_back(v);
            auto ptrs = parameter_pointers(model);
            for (std::size_t i = 0; i < ptrs.size(); ++i) {
                const double orig = *ptrs[i];
                *ptrs[i] = orig + h;
                const double lp = cgcn_loss(model, g, x, labels, mask, 0, false);
                *ptrs[i] = orig - h;
                const double lm = cgcn_loss(model, g, x, labels, mask, 0, false);
                *ptrs[i] = orig;
                worst_rel = std::max(worst_rel, rel_err(flat[i], (lp - lm) / (2.0 * h)));
            }
        }
        {
            SgcModel model = make_sgc(d0, classes, terms, 2, split_seed(seed, 0x72, t));
            Gradients grads;
            sgc_loss_and_grads(model, g, x, labels, mask, grads);
            std::vector<double> flat;
            for (double v : grads.weights[0].data) flat.push_back(v);
            for (const auto& p : grads.cgso)
                for (double v : {p.m1, p.m2, p.m3, p.e1, p.e2, p.e3, p.a}) flat.push_back(v);
            auto ptrs = parameter_pointers(model);
            Gradients unused;
            for (std::size_t i = 0; i < ptrs.size(); ++i) {
                const double orig = *ptrs[i];
                *ptrs[i] = orig + h;
                const double lp = sgc_loss_and_grads(model, g, x, labels, mask, unused);
                *ptrs[i] = orig - h;
                const double lm = sgc_loss_and_grads(model, g, x, labels, mask, unused);
                *ptrs[i] = orig;
                worst_rel = std::max(worst_rel, rel_err(flat[i], (lp - lm) / (2.0 * h)));
            }
        }
    }
    return {"gradients vs central finite differences (h = 1e-5)", worst_rel < 1e-4,
            std::to_string(instances) + " instances, worst relative error " + fmt(worst_rel)};
}

namespace {

CheckResult check_graph_roundtrip(std::uint64_t seed, int graphs) {
    Rng rng(split_seed(seed, 0x4047));
    for (int t = 0; t < graphs; ++t) {
        Graph g = suite_graph(rng, 2, 40);
        Graph back = parse_edge_list(serialize_edge_list(g));
        if (back.node_count() != g.node_count() || back.adjacency() != g.adjacency() ||
            back.row_offsets() != g.row_offsets())
            return {"edge-list serialize/parse round trip", false,
                    "mismatch on trial " + std::to_string(t)};
        std::int64_t deg_sum = 0;
        for (int u = 0; u < g.node_count(); ++u) deg_sum += g.degree(u);
        if (deg_sum != 2 * g.edge_count())
            return {"edge-list serialize/parse round trip", false, "degree-sum identity failed"};
    }
    return {"edge-list serialize/parse round trip", true, std::to_string(graphs) + " graphs"};
}

} // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {"graph",      "spectral",   "cheeger",
                                                   "generators", "clustering", "gradients",
                                                   "all"};
    return names;
}

std::vector<CheckResult> run_suite(std::string_view suite, std::uint64_t seed) {
    std::vector<CheckResult> out;
    const bool all = (suite == "all");
    if (all || suite == "graph") out.push_back(check_graph_roundtrip(seed, 50));
    if (all || suite == "spectral") {
        out.push_back(check_self_adjointness(seed, 30, 5, 40, 1e-12));
        out.push_back(check_eig_residuals(seed, 15, 5, 30));
        out.push_back(check_analytic_moments(seed, 30, 5, 40, 1e-8));
        out.push_back(check_eigenvalue_bounds(seed, 30, 5, 40));
        out.push_back(check_component_spectra(seed, 20, 1e-8));
        out.push_back(check_cheeger_exhaustive(5));
    }
    if (all || suite == "cheeger") out.push_back(check_cheeger_exhaustive(6));
    if (all || suite == "generators") out.push_back(check_ba_edge_count(seed, 50));
    if (all || suite == "clustering") out.push_back(check_component_recovery(seed, 20));
    if (all || suite == "gradients") out.push_back(check_gradients(seed, 6));
    if (out.empty())
        throw std::invalid_argument("unknown suite '" + std::string(suite) +
                                    "'; valid: graph, spectral, cheeger, generators, "
                                    "clustering, gradients, all");
    return out;
}

} // namespace cgso
