#include "cgso/spectral.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cgso {

EigPairs cgso_eigs(const Graph& g, const DiagonalCentrality& diag, double e2, double e3,
                   int dense_limit) {
    const int n = g.node_count();
    if (diag.size() != n) throw std::invalid_argument("cgso_eigs: centrality size mismatch");
    if (n > dense_limit)
        throw std::runtime_error("cgso_eigs: " + std::to_string(n) +
                                 " nodes exceed the dense limit of " + std::to_string(dense_limit));

    const double half_sum = 0.5 * (e2 + e3);
    const double half_diff = 0.5 * (e2 - e3);
    std::vector<double> ps(n), pd(n);
    for (int i = 0; i < n; ++i) {
        ps[i] = std::exp(half_sum * diag.log_entries[i]);
        pd[i] = std::exp(half_diff * diag.log_entries[i]);
    }

    DenseMatrix s(n, n);
    for (int u = 0; u < n; ++u)
        for (int v : g.neighbors(u))
            if (u < v) {
                const double val = ps[u] * ps[v];
                s(u, v) = val;
                s(v, u) = val;
            }

    SymmetricEigen se = eig_symmetric(s);

    EigPairs out;
    out.eigenvalues = std::move(se.eigenvalues);
    out.eigenvectors = DenseMatrix(n, n);
    for (int k = 0; k < n; ++k) {
        double norm = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = pd[i] * se.eigenvectors(i, k);
            out.eigenvectors(i, k) = w;
            norm += w * w;
        }
        norm = std::sqrt(norm);
        double col_max = 0.0;
        for (int i = 0; i < n; ++i)
            col_max = std::max(col_max, std::abs(out.eigenvectors(i, k)));
        double sign = 1.0;
        for (int i = 0; i < n; ++i) {
            const double w = out.eigenvectors(i, k);
            if (std::abs(w) > 1e-12 * col_max) {
                sign = (w < 0.0) ? -1.0 : 1.0;
                break;
            }
        }
        const double f = (norm > 0.0) ? sign / norm : 1.0;
        for (int i = 0; i < n; ++i) out.eigenvectors(i, k) *= f;
    }
    return out;
}

Moments analytic_moments(const Graph& g, const DiagonalCentrality& diag) {
    const int n = g.node_count();
    if (n == 0) throw std::invalid_argument("analytic_moments: empty graph");
    // Simple graphs store no self-loops, so trace(V^{-1} A) vanishes.
    const double mu = 0.0;
    double s = 0.0;
    for (int u = 0; u < n; ++u)
        for (int v : g.neighbors(u)) s += 1.0 / (diag.entries[u] * diag.entries[v]);
    return {mu, std::sqrt(std::max(0.0, s / n - mu * mu))};
}

double mean_reciprocal_centrality(const Graph& g, const DiagonalCentrality& diag) {
    const int n = g.node_count();
    if (n == 0) throw std::invalid_argument("mean_reciprocal_centrality: empty graph");
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += 1.0 / diag.entries[i];
    return s / n;
}

namespace {

double gap_from_markov_eigs(const std::vector<double>& markov_eigs, double zero_tol,
                            double* tol_used) {
    // Eigenvalues of I - M_G, ascending.
    std::vector<double> shifted(markov_eigs.size());
    for (std::size_t i = 0; i < markov_eigs.size(); ++i)
        shifted[i] = 1.0 - markov_eigs[markov_eigs.size() - 1 - i];
    double max_abs = 0.0;
    for (double v : shifted) max_abs = std::max(max_abs, std::abs(v));
    const double tol = (zero_tol >= 0.0) ? zero_tol : 1e-8 * max_abs;
    if (tol_used) *tol_used = tol;
    for (double v : shifted)
        if (v > tol) return v;
    throw std::runtime_error("spectral_gap: all eigenvalues of I - M_G fall below the zero "
                             "tolerance; spectrum is degenerate");
}

} // namespace

double spectral_gap(const Graph& g, const DiagonalCentrality& diag, double zero_tol,
                    int dense_limit) {
    EigPairs e = cgso_eigs(g, diag, -1.0, 0.0, dense_limit);
    return gap_from_markov_eigs(e.eigenvalues, zero_tol, nullptr);
}

EigenvalueBounds eigenvalue_bounds(const Graph& g, const DiagonalCentrality& diag,
                                   int dense_limit) {
    const int n = g.node_count();
    EigenvalueBounds b{};
    b.gamma = std::numeric_limits<double>::infinity();
    b.gershgorin = 0.0;
    for (int i = 0; i < n; ++i) {
        const int d = g.degree(i);
        if (d == 0)
            throw std::domain_error("eigenvalue_bounds: node " + std::to_string(i) +
                                    " is isolated");
        b.gamma = std::min(b.gamma, diag.entries[i] / d);
        b.gershgorin = std::max(b.gershgorin, d / diag.entries[i]);
    }
    EigPairs e = cgso_eigs(g, diag, -1.0, 0.0, dense_limit);
    b.spectral_radius = std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
    if (b.spectral_radius > b.gershgorin + 1e-8)
        throw std::logic_error("eigenvalue_bounds: spectral radius exceeds the row-sum bound");
    if (b.gamma >= 1.0 && b.spectral_radius > b.gamma + 1e-8)
        throw std::logic_error("eigenvalue_bounds: spectral radius exceeds gamma in the "
                               "gamma >= 1 regime");
    return b;
}

SpectralReport spectral_report(const Graph& g, const DiagonalCentrality& diag, double zero_tol,
                               int dense_limit) {
    SpectralReport r;
    r.centrality = diag.source_kind;
    r.connected = connected_components(g).component_count <= 1;

    EigPairs e = cgso_eigs(g, diag, -1.0, 0.0, dense_limit);
    r.eigenvalues.assign(e.eigenvalues.rbegin(), e.eigenvalues.rend());
    r.spectral_gap_lambda1 = gap_from_markov_eigs(e.eigenvalues, zero_tol, &r.zero_tolerance);
    r.spectral_radius =
        std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));

    const Moments m = analytic_moments(g, diag);
    r.analytic_mean = m.mean;
    r.analytic_std = m.stddev;
    r.mean_reciprocal_centrality = mean_reciprocal_centrality(g, diag);

    r.gamma = std::numeric_limits<double>::infinity();
    r.gershgorin_bound = 0.0;
    for (int i = 0; i < g.node_count(); ++i) {
        const int d = g.degree(i);
        if (d == 0) {
            r.gamma = 0.0;
            r.gershgorin_bound = std::numeric_limits<double>::infinity();
            break;
        }
        r.gamma = std::min(r.gamma, diag.entries[i] / d);
        r.gershgorin_bound = std::max(r.gershgorin_bound, d / diag.entries[i]);
    }
    return r;
}

CheegerReport cheeger_bruteforce(const Graph& g, const DiagonalCentrality& diag) {
    const int n = g.node_count();
    if (n < 2 || n > 16)
        throw std::invalid_argument("cheeger_bruteforce: node count must lie in [2, 16]");
    if (connected_components(g).component_count != 1)
        throw std::invalid_argument("cheeger_bruteforce: graph must be connected");
    for (int i = 0; i < n; ++i)
        if (g.degree(i) == 0)
            throw std::invalid_argument("cheeger_bruteforce: isolated vertex " +
                                        std::to_string(i));

    std::vector<std::uint32_t> adj_mask(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v : g.neighbors(u)) adj_mask[u] |= (1u << v);

    double total_weight = 0.0;
    for (int i = 0; i < n; ++i) total_weight += diag.entries[i];
    const double half = 0.5 * total_weight;

    CheegerReport rep;
    rep.h_vertex = std::numeric_limits<double>::infinity();
    rep.h_edge = std::numeric_limits<double>::infinity();
    std::uint32_t best_vertex_mask = 0, best_edge_mask = 0;

    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        double w = 0.0;
        std::uint32_t neigh = 0;
        int cut_edges = 0;
        for (std::uint32_t rest = mask; rest != 0;) {
            const int u = std::countr_zero(rest);
            rest &= rest - 1;
            w += diag.entries[u];
            neigh |= adj_mask[u];
            cut_edges += std::popcount(adj_mask[u] & ~mask);
        }
        if (w > half + 1e-12 * total_weight) continue;
        const int boundary_vertices = std::popcount(neigh & ~mask);
        const double hv = boundary_vertices / w;
        const double he = cut_edges / w;
        if (hv < rep.h_vertex) {
            rep.h_vertex = hv;
            best_vertex_mask = mask;
        }
        if (he < rep.h_edge) {
            rep.h_edge = he;
            best_edge_mask = mask;
        }
    }
    if (!std::isfinite(rep.h_vertex))
        throw std::runtime_error("cheeger_bruteforce: no admissible subset (unbalanced "
                                 "centrality mass)");

    for (int i = 0; i < n; ++i) {
        if (best_vertex_mask & (1u << i)) rep.argmin_vertex.push_back(i);
        if (best_edge_mask & (1u << i)) rep.argmin_edge.push_back(i);
    }

    double v_min = diag.entries[0], v_max = diag.entries[0];
    for (int i = 1; i < n; ++i) {
        v_min = std::min(v_min, diag.entries[i]);
        v_max = std::max(v_max, diag.entries[i]);
    }
    const double factor = 2.0 * n * v_max * v_max / v_min;
    rep.lambda1 = spectral_gap(g, diag);
    rep.bound_rhs_vertex = factor * rep.h_vertex;
    rep.bound_rhs_edge = factor * rep.h_edge;
    rep.holds_vertex = rep.lambda1 <= rep.bound_rhs_vertex + 1e-10;
    rep.holds_edge = rep.lambda1 <= rep.bound_rhs_edge + 1e-10;
    return rep;
}

} // namespace cgso
