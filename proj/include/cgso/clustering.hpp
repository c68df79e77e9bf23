#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cgso/centrality.hpp"
#include "cgso/dense.hpp"
#include "cgso/graph.hpp"
#include "cgso/operators.hpp"
#include "cgso/partition.hpp"

namespace cgso {

struct KMeansConfig {
    int n_init = 10;
    int max_iter = 300;
};

// Lloyd iterations with k-means++ seeding; best of n_init restarts by
// within-cluster sum of squares. Empty clusters are repaired by stealing the
// point farthest from its centroid.
Partition kmeans(const DenseMatrix& points, int k, std::uint64_t seed, KMeansConfig cfg = {});

double kmeans_wcss(const DenseMatrix& points, const Partition& p);

// The n x C matrix whose columns are the eigenvectors of V^{e2} A V^{e3}
// with the C largest eigenvalues (algebraic by default, by modulus behind
// the flag), ordered by descending eigenvalue. Rows are the clustering
// inputs and are used raw.
DenseMatrix spectral_embedding(const Graph& g, const DiagonalCentrality& diag, double e2,
                               double e3, int C, bool by_modulus = false,
                               int dense_limit = CgsoOperator::kDefaultDenseLimit);

struct SpectralClusterOptions {
    bool by_modulus = false;
    int dense_limit = CgsoOperator::kDefaultDenseLimit;
    KMeansConfig kmeans;
};

Partition spectral_cluster(const Graph& g, const DiagonalCentrality& diag, double e2, double e3,
                           int C, std::uint64_t seed, SpectralClusterOptions opts = {});

// Adjusted mutual information with the hypergeometric expected-MI model and
// max-entropy normalization, via log-factorial tables. Symmetric and
// invariant under label permutation; 1 for identical partitions. When both
// partitions are trivial (zero max entropy) the adjustment is undefined, and
// the convention is 1 for identical partitions, 0 otherwise.
double ami(const Partition& a, const Partition& b);

// Adjusted Rand index over the pair-counting contingency table, with the
// same degenerate-denominator convention as ami.
double ari(const Partition& a, const Partition& b);

struct HeatmapGrid {
    std::vector<double> e2_values;
    std::vector<double> e3_values;
    // Indexed [e2 index][e3 index].
    std::vector<std::vector<double>> ami_mean, ami_std, ari_mean, ari_std;
    int repeats = 0;
    std::uint64_t seed = 0;
};

// For each (e2, e3) grid cell, clusters `repeats` times with split k-means
// seeds and records mean/std AMI and ARI against the ground truth. The
// cluster count is inferred from the truth partition. Deterministic given
// the seed.
HeatmapGrid heatmap(const Graph& g, const DiagonalCentrality& diag, const Partition& truth,
                    std::pair<double, double> e2_range, std::pair<double, double> e3_range,
                    int steps, int repeats, std::uint64_t seed,
                    int dense_limit = CgsoOperator::kDefaultDenseLimit);

} // namespace cgso
