#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cgso/centrality.hpp"
#include "cgso/graph.hpp"
#include "cgso/rng.hpp"

namespace cgso {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Random spanning tree plus independent extra edges; connected by
// construction and deterministic given the generator state.
Graph random_connected_graph(int n, double extra_edge_prob, Rng& rng);

// Union of `parts` connected graphs with no cross edges.
Graph random_disconnected_graph(const std::vector<int>& part_sizes, double extra_edge_prob,
                                Rng& rng);

// The four diagonal centrality matrices (degree, k-core, PageRank,
// walk-count with the default length) of a graph without isolated nodes.
std::vector<DiagonalCentrality> all_centrality_diagonals(const Graph& g);

// Prop-style invariant checks. Each one draws its own seeded suite and
// reports the worst deviation observed.
CheckResult check_self_adjointness(std::uint64_t seed, int graphs, int n_min, int n_max,
                                   double tol);
CheckResult check_eig_residuals(std::uint64_t seed, int graphs, int n_min, int n_max);
CheckResult check_analytic_moments(std::uint64_t seed, int graphs, int n_min, int n_max,
                                   double tol);
CheckResult check_eigenvalue_bounds(std::uint64_t seed, int graphs, int n_min, int n_max);
CheckResult check_component_spectra(std::uint64_t seed, int graphs, double tol);
CheckResult check_component_recovery(std::uint64_t seed, int graphs);
// Exhaustive over all labeled connected graphs with node counts in
// [2, max_n], all four centralities; validates the edge-boundary expansion
// bound on lambda_1.
CheckResult check_cheeger_exhaustive(int max_n);
CheckResult check_ba_edge_count(std::uint64_t seed, int draws);
CheckResult check_gradients(std::uint64_t seed, int instances);

// Named suites: "graph", "spectral", "cheeger", "generators", "clustering",
// "gradients", or "all".
std::vector<CheckResult> run_suite(std::string_view suite, std::uint64_t seed);
const std::vector<std::string>& suite_names();

} // namespace cgso
