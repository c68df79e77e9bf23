#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cgso/centrality.hpp"
#include "cgso/dense.hpp"
#include "cgso/graph.hpp"

namespace cgso {

// The seven scalars of the parametrized centrality shift operator
//   Phi(A, V) = m1 V^e1 + m2 V^e2 (A + a I) V^e3 + m3 I.
struct CgsoParams {
    double m1 = 0.0, m2 = 0.0, m3 = 0.0;
    double e1 = 0.0, e2 = 0.0, e3 = 0.0;
    double a = 0.0;

    bool operator==(const CgsoParams&) const = default;
};

// Named parameter presets. With degree centrality these reproduce the
// classical shift operators (adjacency, Laplacians, normalized adjacency,
// mean aggregation). Note the normalized_adjacency preset scales by the
// plain centrality matrix V and injects self-loops only through a=1; it is
// not the augmented-degree (D+I) normalization used by stock GCN layers.
CgsoParams preset(std::string_view name);
const std::vector<std::string>& preset_names();

// One Phi(A, V) with frozen parameters, applied matrix-free: two diagonal
// scalings around one sparse mat-vec per term, never materializing a dense
// matrix in apply.
class CgsoOperator {
public:
    struct Term {
        DiagonalCentrality diag;
        CgsoParams params;
        // Cached per-node powers v^e1, v^e2, v^e3.
        std::vector<double> pow_e1, pow_e2, pow_e3;
    };

    CgsoOperator(const Graph& g, DiagonalCentrality diag, CgsoParams params);

    const Graph& graph() const { return *graph_; }
    const std::vector<Term>& terms() const { return terms_; }

    void apply(std::span<const double> x, std::span<double> y) const;
    std::vector<double> apply(std::span<const double> x) const;
    // Row-major multi-vector apply: out = Phi(A,V) X, for n x d inputs.
    void apply_rows(const DenseMatrix& x, DenseMatrix& out) const;

    // Entry-wise equal to apply on the n standard basis vectors. Throws past
    // the dense node limit, advising the matrix-free path.
    DenseMatrix materialize_dense(int dense_limit = kDefaultDenseLimit) const;

    static constexpr int kDefaultDenseLimit = 5000;

    friend CgsoOperator combine(const CgsoOperator& a, const CgsoOperator& b);

private:
    explicit CgsoOperator(const Graph& g) : graph_(&g) {}
    const Graph* graph_;
    std::vector<Term> terms_;
};

// M_G = V^{-1} A, the Markov averaging operator; equals the parametrized
// family at (0, 1, 0, 0, -1, 0, 0).
CgsoOperator markov_operator(const Graph& g, DiagonalCentrality diag);

CgsoOperator build_parametrized(const Graph& g, DiagonalCentrality diag, CgsoParams params);

// Sum of two operators over the same graph; each term keeps its own seven
// scalars.
CgsoOperator combine(const CgsoOperator& a, const CgsoOperator& b);

// y_i = sum_{j in N(i)} x_j  (one sparse mat-vec over the adjacency).
void adjacency_apply(const Graph& g, std::span<const double> x, std::span<double> y);
void adjacency_apply_rows(const Graph& g, const DenseMatrix& x, DenseMatrix& out);

} // namespace cgso
