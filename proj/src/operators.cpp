#include "cgso/operators.hpp"

#include <cmath>
#include <stdexcept>

namespace cgso {

namespace {

const std::vector<std::pair<std::string, CgsoParams>>& preset_table() {
    // (m1, m2, m3, e1, e2, e3, a)
    static const std::vector<std::pair<std::string, CgsoParams>> table = {
        {"adjacency", {0, 1, 0, 0, 0, 0, 0}},
        {"laplacian", {1, -1, 0, 1, 0, 0, 0}},
        {"signless_laplacian", {1, 1, 0, 1, 0, 0, 0}},
        {"rw_laplacian", {0, -1, 1, 0, -1, 0, 0}},
        {"sym_laplacian", {0, -1, 1, 0, -0.5, -0.5, 0}},
        {"normalized_adjacency", {0, 1, 0, 0, -0.5, -0.5, 1}},
        {"mean_aggregation", {0, 1, 0, 0, -1, 0, 0}},
    };
    return table;
}

std::vector<double> powers(const DiagonalCentrality& diag, double e) {
    std::vector<double> out(diag.entries.size());
    if (e == 0.0) {
        std::fill(out.begin(), out.end(), 1.0);
    } else if (e == 1.0) {
        out = diag.entries;
    } else {
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = std::exp(e * diag.log_entries[i]);
    }
    return out;
}

} // namespace

CgsoParams preset(std::string_view name) {
    for (const auto& [key, params] : preset_table())
        if (key == name) return params;
    std::string msg = "unknown preset '" + std::string(name) + "'; valid presets:";
    for (const auto& [key, _] : preset_table()) msg += " " + key;
    throw std::invalid_argument(msg);
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [key, _] : preset_table()) out.push_back(key);
        return out;
    }();
    return names;
}

CgsoOperator::CgsoOperator(const Graph& g, DiagonalCentrality diag, CgsoParams params)
    : graph_(&g) {
    if (diag.size() != g.node_count())
        throw std::invalid_argument("CgsoOperator: centrality size does not match graph");
    for (double v : {params.m1, params.m2, params.m3, params.e1, params.e2, params.e3, params.a})
        if (!std::isfinite(v)) throw std::invalid_argument("CgsoOperator: non-finite parameter");
    Term t;
    t.pow_e1 = powers(diag, params.e1);
    t.pow_e2 = powers(diag, params.e2);
    t.pow_e3 = powers(diag, params.e3);
    t.diag = std::move(diag);
    t.params = params;
    terms_.push_back(std::move(t));
}

void adjacency_apply(const Graph& g, std::span<const double> x, std::span<double> y) {
    const int n = g.node_count();
    for (int u = 0; u < n; ++u) {
        double acc = 0.0;
        for (int v : g.neighbors(u)) acc += x[v];
        y[u] = acc;
    }
}

void adjacency_apply_rows(const Graph& g, const DenseMatrix& x, DenseMatrix& out) {
    const int n = g.node_count();
    const int d = x.cols;
    out.rows = n;
    out.cols = d;
    out.data.assign(static_cast<std::size_t>(n) * d, 0.0);
    for (int u = 0; u < n; ++u) {
        auto dst = out.row(u);
        for (int v : g.neighbors(u)) {
            auto src = x.row(v);
            for (int c = 0; c < d; ++c) dst[c] += src[c];
        }
    }
}

void CgsoOperator::apply(std::span<const double> x, std::span<double> y) const {
    const int n = graph_->node_count();
    std::vector<double> scaled(n), agg(n);
    for (int i = 0; i < n; ++i) y[i] = 0.0;
    for (const Term& t : terms_) {
        const auto& p = t.params;
        if (p.m2 != 0.0) {
            for (int i = 0; i < n; ++i) scaled[i] = t.pow_e3[i] * x[i];
            adjacency_apply(*graph_, scaled, agg);
            for (int i = 0; i < n; ++i)
                y[i] += p.m2 * t.pow_e2[i] * (agg[i] + p.a * scaled[i]);
        }
        if (p.m1 != 0.0)
            for (int i = 0; i < n; ++i) y[i] += p.m1 * t.pow_e1[i] * x[i];
        if (p.m3 != 0.0)
            for (int i = 0; i < n; ++i) y[i] += p.m3 * x[i];
    }
}

std::vector<double> CgsoOperator::apply(std::span<const double> x) const {
    std::vector<double> y(graph_->node_count());
    apply(x, y);
    return y;
}

void CgsoOperator::apply_rows(const DenseMatrix& x, DenseMatrix& out) const {
    const int n = graph_->node_count();
    const int d = x.cols;
    if (x.rows != n) throw std::invalid_argument("apply_rows: row count does not match graph");
    out.rows = n;
    out.cols = d;
    out.data.assign(static_cast<std::size_t>(n) * d, 0.0);
    DenseMatrix scaled(n, d), agg;
    for (const Term& t : terms_) {
        const auto& p = t.params;
        if (p.m2 != 0.0) {
            for (int i = 0; i < n; ++i) {
                auto src = x.row(i);
                auto dst = scaled.row(i);
                for (int c = 0; c < d; ++c) dst[c] = t.pow_e3[i] * src[c];
            }
            adjacency_apply_rows(*graph_, scaled, agg);
            for (int i = 0; i < n; ++i) {
                auto acc = agg.row(i);
                auto s = scaled.row(i);
                auto dst = out.row(i);
                const double f = p.m2 * t.pow_e2[i];
                for (int c = 0; c < d; ++c) dst[c] += f * (acc[c] + p.a * s[c]);
            }
        }
        if (p.m1 != 0.0) {
            for (int i = 0; i < n; ++i) {
                auto src = x.row(i);
                auto dst = out.row(i);
                const double f = p.m1 * t.pow_e1[i];
                for (int c = 0; c < d; ++c) dst[c] += f * src[c];
            }
        }
        if (p.m3 != 0.0) {
            for (int i = 0; i < n; ++i) {
                auto src = x.row(i);
                auto dst = out.row(i);
                for (int c = 0; c < d; ++c) dst[c] += p.m3 * src[c];
            }
        }
    }
}

DenseMatrix CgsoOperator::materialize_dense(int dense_limit) const {
    const int n = graph_->node_count();
    if (n > dense_limit)
        throw std::runtime_error("materialize_dense: " + std::to_string(n) +
                                 " nodes exceed the dense limit of " + std::to_string(dense_limit) +
                                 "; use the matrix-free apply instead");
    DenseMatrix m(n, n);
    std::vector<double> basis(n, 0.0), col(n);
    for (int j = 0; j < n; ++j) {
        basis[j] = 1.0;
        apply(basis, col);
        basis[j] = 0.0;
        for (int i = 0; i < n; ++i) m(i, j) = col[i];
    }
    return m;
}

CgsoOperator markov_operator(const Graph& g, DiagonalCentrality diag) {
    return CgsoOperator(g, std::move(diag), CgsoParams{0, 1, 0, 0, -1, 0, 0});
}

CgsoOperator build_parametrized(const Graph& g, DiagonalCentrality diag, CgsoParams params) {
    return CgsoOperator(g, std::move(diag), params);
}

CgsoOperator combine(const CgsoOperator& a, const CgsoOperator& b) {
    if (a.graph_ != b.graph_)
        throw std::invalid_argument("combine: operators are defined on different graphs");
    CgsoOperator out(*a.graph_);
    out.terms_ = a.terms_;
    out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
    return out;
}

} // namespace cgso
