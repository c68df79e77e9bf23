#pragma once

#include <optional>
#include <vector>

#include "cgso/centrality.hpp"
#include "cgso/eigensolver.hpp"
#include "cgso/graph.hpp"
#include "cgso/operators.hpp"

namespace cgso {

// Eigenpairs of Phi = V^{e2} A V^{e3}, computed through the symmetric
// similarity S = V^{(e2+e3)/2} A V^{(e2+e3)/2}: S shares Phi's eigenvalues,
// and transforming its orthonormal eigenvectors by V^{(e2-e3)/2} yields
// Phi's. Eigenvalues are therefore real by construction. Eigenvalues come
// back ascending; eigenvectors are L2-normalized with the usual sign
// convention.
struct EigPairs {
    std::vector<double> eigenvalues;
    DenseMatrix eigenvectors; // column k pairs with eigenvalues[k]
};
EigPairs cgso_eigs(const Graph& g, const DiagonalCentrality& diag, double e2, double e3,
                   int dense_limit = CgsoOperator::kDefaultDenseLimit);

// Spectrum moments of M_G = V^{-1} A without an eigendecomposition. The mean
// comes from the actual trace (zero for simple graphs, which store no
// self-loops); the standard deviation from the diagonal of M_G^2:
// sigma = sqrt((1/n) sum over ordered adjacent pairs 1/(v_i v_j) - mu^2).
struct Moments {
    double mean;
    double stddev;
};
Moments analytic_moments(const Graph& g, const DiagonalCentrality& diag);

// (1/n) sum_i 1/v(i) -- the closed-form mean that assumes unit self-loops,
// exposed separately for comparison against the trace-based mean.
double mean_reciprocal_centrality(const Graph& g, const DiagonalCentrality& diag);

// Smallest eigenvalue of I - M_G exceeding zero_tol. A negative zero_tol
// selects the default 1e-8 * max |eigenvalue of I - M_G|. Throws when every
// eigenvalue sits below the tolerance.
double spectral_gap(const Graph& g, const DiagonalCentrality& diag, double zero_tol = -1.0,
                    int dense_limit = CgsoOperator::kDefaultDenseLimit);

// gamma = min_i v(i)/deg(i), the row-sum bound max_i deg(i)/v(i), and the
// computed spectral radius of M_G. The radius never exceeds the row-sum
// bound; it is additionally certified against gamma when gamma >= 1, the
// regime where that bound holds (gamma can under-estimate the radius when
// gamma < 1). Isolated nodes raise.
struct EigenvalueBounds {
    double gamma;
    double gershgorin;
    double spectral_radius;
};
EigenvalueBounds eigenvalue_bounds(const Graph& g, const DiagonalCentrality& diag,
                                   int dense_limit = CgsoOperator::kDefaultDenseLimit);

struct SpectralReport {
    std::vector<double> eigenvalues; // of M_G, sorted descending
    double analytic_mean = 0.0;
    double analytic_std = 0.0;
    double mean_reciprocal_centrality = 0.0;
    double gamma = 0.0;
    double gershgorin_bound = 0.0;
    double spectral_radius = 0.0;
    double spectral_gap_lambda1 = 0.0;
    double zero_tolerance = 0.0;
    bool connected = true;
    CentralityKind centrality = CentralityKind::Custom;
};
SpectralReport spectral_report(const Graph& g, const DiagonalCentrality& diag,
                               double zero_tol = -1.0,
                               int dense_limit = CgsoOperator::kDefaultDenseLimit);

// Exhaustive centrality-weighted Cheeger constant,
//   h_v = min { boundary(U) / |U|_v : U nonempty, |U|_v <= |V|_v / 2 },
// in both boundary flavors: vertex boundary (the count of outside vertices
// adjacent to U) and edge boundary (the count of cut edges). Each variant
// carries its argmin subset and the bound 2 N (v_+^2 / v_-) h_v compared
// against lambda_1. Enumeration is 2^n, capped at n <= 16; requires a
// connected graph without isolated vertices.
struct CheegerReport {
    double h_vertex = 0.0;
    double h_edge = 0.0;
    std::vector<int> argmin_vertex;
    std::vector<int> argmin_edge;
    double bound_rhs_vertex = 0.0;
    double bound_rhs_edge = 0.0;
    double lambda1 = 0.0;
    bool holds_vertex = false;
    bool holds_edge = false;
};
CheegerReport cheeger_bruteforce(const Graph& g, const DiagonalCentrality& diag);

} // namespace cgso
