#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cgso/graph.hpp"

namespace cgso {

enum class CentralityKind { Degree, KCore, PageRank, WalkCount, Custom };

std::string centrality_kind_name(CentralityKind k);

// Per-node centrality values v(i) with parameters of the computation that
// produced them.
struct CentralityVector {
    CentralityKind kind = CentralityKind::Custom;
    std::vector<double> values;
    double damping = 0.0;  // PageRank only
    double tolerance = 0.0; // PageRank only
    int walk_length = 0;    // WalkCount only
};

CentralityVector degree_vector(const Graph& g);

// Bucket-peeling core decomposition; isolated nodes get core 0.
CentralityVector kcore_numbers(const Graph& g);

// Power iteration on the damped random walk until the L1 change drops below
// tol. Dangling (isolated) nodes redistribute their mass uniformly, so the
// result is a probability vector on arbitrary inputs. Throws after max_iter
// non-converged iterations, carrying the residual.
CentralityVector pagerank(const Graph& g, double damping = 0.85, double tol = 1e-10,
                          int max_iter = 1000);

// (A^length 1)[i] via repeated sparse mat-vec with integer accumulation.
// Throws if a count leaves the exactly-representable integer range.
CentralityVector walk_counts(const Graph& g, int length = 2);

CentralityVector compute_centrality(const Graph& g, CentralityKind kind, int walk_length = 2,
                                    double damping = 0.85, double tol = 1e-10,
                                    int max_iter = 1000);

// Diagonal of V after the kind-specific transform: identity for
// degree/k-core/walk counts, x -> 1/(1-x) for PageRank. All entries strictly
// positive; construction fails otherwise, naming the offending node.
struct DiagonalCentrality {
    std::vector<double> entries;
    std::vector<double> log_entries; // cached ln v(i); training differentiates through exponents
    CentralityKind source_kind = CentralityKind::Custom;

    static DiagonalCentrality from_values(std::vector<double> values,
                                          CentralityKind kind = CentralityKind::Custom);
    int size() const { return static_cast<int>(entries.size()); }
};

DiagonalCentrality build_diagonal(const CentralityVector& c);

} // namespace cgso
