#include "cgso/nn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cgso/rng.hpp"

namespace cgso {

namespace {

struct TermPowers {
    std::vector<double> p1, p2, p3; // v^e1, v^e2, v^e3
};

TermPowers term_powers(const OperatorTermSpec& t) {
    const std::size_t n = t.diag.entries.size();
    TermPowers p;
    p.p1.resize(n);
    p.p2.resize(n);
    p.p3.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lv = t.diag.log_entries[i];
        p.p1[i] = std::exp(t.params.e1 * lv);
        p.p2[i] = std::exp(t.params.e2 * lv);
        p.p3[i] = std::exp(t.params.e3 * lv);
    }
    return p;
}

void rowscale_into(const DenseMatrix& x, const std::vector<double>& s, DenseMatrix& out) {
    out.rows = x.rows;
    out.cols = x.cols;
    out.data.resize(x.data.size());
    for (int i = 0; i < x.rows; ++i) {
        const double f = s[i];
        auto src = x.row(i);
        auto dst = out.row(i);
        for (int c = 0; c < x.cols; ++c) dst[c] = f * src[c];
    }
}

void add_scaled_rows(DenseMatrix& acc, const DenseMatrix& x, const std::vector<double>& s,
                     double factor) {
    for (int i = 0; i < x.rows; ++i) {
        const double f = factor * s[i];
        auto src = x.row(i);
        auto dst = acc.row(i);
        for (int c = 0; c < x.cols; ++c) dst[c] += f * src[c];
    }
}

void add_plain(DenseMatrix& acc, const DenseMatrix& x, double factor) {
    for (std::size_t i = 0; i < x.data.size(); ++i) acc.data[i] += factor * x.data[i];
}

// Phi X = sum over terms of m1 V^e1 X + m2 V^e2 (A + aI) V^e3 X + m3 X.
DenseMatrix phi_apply(const Graph& g, const std::vector<OperatorTermSpec>& terms,
                      const std::vector<TermPowers>& powers, const DenseMatrix& x) {
    DenseMatrix out(x.rows, x.cols);
    DenseMatrix scaled, agg;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        const CgsoParams& p = terms[t].params;
        if (p.m2 != 0.0) {
            rowscale_into(x, powers[t].p3, scaled);
            adjacency_apply_rows(g, scaled, agg);
            if (p.a != 0.0) add_plain(agg, scaled, p.a);
            add_scaled_rows(out, agg, powers[t].p2, p.m2);
        }
        if (p.m1 != 0.0) add_scaled_rows(out, x, powers[t].p1, p.m1);
        if (p.m3 != 0.0) add_plain(out, x, p.m3);
    }
    return out;
}

double dot_rows_weighted(const DenseMatrix& a, const DenseMatrix& b,
                         const std::vector<double>& row_weight) {
    double s = 0.0;
    for (int i = 0; i < a.rows; ++i) {
        const double w = row_weight[i];
        if (w == 0.0) continue;
        auto ra = a.row(i);
        auto rb = b.row(i);
        double acc = 0.0;
        for (int c = 0; c < a.cols; ++c) acc += ra[c] * rb[c];
        s += w * acc;
    }
    return s;
}

// Scalar gradients of one term, contracted against the upstream gradient gm
// for input d; also accumulates Phi^T gm into gd.
void term_grads(const Graph& g, const OperatorTermSpec& term, const TermPowers& pw,
                const DenseMatrix& gm, const DenseMatrix& d, CgsoParams& out, DenseMatrix& gd) {
    const CgsoParams& p = term.params;
    const std::vector<double>& lnv = term.diag.log_entries;

    DenseMatrix scaled_d1;
    rowscale_into(d, pw.p1, scaled_d1); // V^e1 D
    out.m1 += dot(gm, scaled_d1);
    out.e1 += p.m1 * dot_rows_weighted(gm, scaled_d1, lnv);
    out.m3 += dot(gm, d);

    DenseMatrix pmat;
    rowscale_into(d, pw.p3, pmat); // P = V^e3 D
    DenseMatrix q;
    adjacency_apply_rows(g, pmat, q);
    if (p.a != 0.0) add_plain(q, pmat, p.a); // Q = (A + aI) P
    DenseMatrix r;
    rowscale_into(q, pw.p2, r); // R = V^e2 Q
    out.m2 += dot(gm, r);
    out.e2 += p.m2 * dot_rows_weighted(gm, r, lnv);

    DenseMatrix u;
    rowscale_into(gm, pw.p2, u); // U = V^e2 GM
    DenseMatrix s;
    adjacency_apply_rows(g, u, s);
    if (p.a != 0.0) add_plain(s, u, p.a); // S = (A + aI) U
    out.e3 += p.m2 * dot_rows_weighted(s, pmat, lnv);
    out.a += p.m2 * dot(u, pmat);

    // gd += Phi^T gm = m1 V^e1 GM + m2 V^e3 S + m3 GM
    if (p.m1 != 0.0) add_scaled_rows(gd, gm, pw.p1, p.m1);
    if (p.m2 != 0.0) add_scaled_rows(gd, s, pw.p3, p.m2);
    if (p.m3 != 0.0) add_plain(gd, gm, p.m3);
}

void check_finite(const DenseMatrix& m, int layer) {
    for (double v : m.data)
        if (!std::isfinite(v))
            throw NonFiniteError("non-finite activation in layer " + std::to_string(layer));
}

void relu_inplace(DenseMatrix& m) {
    for (double& v : m.data) v = std::max(0.0, v);
}

// Masked mean softmax cross-entropy; fills the gradient w.r.t. logits.
double softmax_ce(const DenseMatrix& logits, const std::vector<int>& labels,
                  const std::vector<int>& mask, DenseMatrix* grad) {
    if (mask.empty()) throw std::invalid_argument("loss: empty node mask");
    if (grad) *grad = DenseMatrix(logits.rows, logits.cols);
    double loss = 0.0;
    std::vector<double> prob(logits.cols);
    for (int i : mask) {
        auto row = logits.row(i);
        const int y = labels[i];
        if (y < 0 || y >= logits.cols)
            throw std::invalid_argument("loss: label out of range at node " + std::to_string(i));
        double mx = row[0];
        for (int c = 1; c < logits.cols; ++c) mx = std::max(mx, row[c]);
        double sum = 0.0;
        for (int c = 0; c < logits.cols; ++c) {
            prob[c] = std::exp(row[c] - mx);
            sum += prob[c];
        }
        loss -= std::log(prob[y] / sum);
        if (grad) {
            auto gr = grad->row(i);
            for (int c = 0; c < logits.cols; ++c)
                gr[c] = (prob[c] / sum - (c == y ? 1.0 : 0.0)) / static_cast<double>(mask.size());
        }
    }
    return loss / static_cast<double>(mask.size());
}

void apply_dropout(DenseMatrix& m, double p, Rng& rng, std::vector<char>& mask_out) {
    const double keep = 1.0 - p;
    mask_out.resize(m.data.size());
    for (std::size_t i = 0; i < m.data.size(); ++i) {
        if (rng.next_unit() < p) {
            mask_out[i] = 0;
            m.data[i] = 0.0;
        } else {
            mask_out[i] = 1;
            m.data[i] /= keep;
        }
    }
}

} // namespace

CgcnModel make_cgcn(std::vector<int> layer_dims, std::vector<OperatorTermSpec> terms,
                    double dropout_p, std::uint64_t seed) {
    if (layer_dims.size() < 2) throw std::invalid_argument("make_cgcn: need at least one layer");
    if (terms.empty() || terms.size() > 2)
        throw std::invalid_argument("make_cgcn: expected one or two operator terms");
    CgcnModel m;
    m.layer_dims = std::move(layer_dims);
    m.terms = std::move(terms);
    m.dropout_p = dropout_p;
    for (std::size_t l = 0; l + 1 < m.layer_dims.size(); ++l) {
        const int din = m.layer_dims[l], dout = m.layer_dims[l + 1];
        DenseMatrix w(din, dout);
        Rng rng(split_seed(seed, 0x11, l));
        const double limit = std::sqrt(6.0 / (din + dout));
        for (double& v : w.data) v = (2.0 * rng.next_unit() - 1.0) * limit;
        m.weights.push_back(std::move(w));
    }
    return m;
}

DenseMatrix cgcn_forward(const CgcnModel& model, const Graph& g, const DenseMatrix& x,
                         bool train_mode, std::uint64_t dropout_seed, ForwardCache* cache) {
    if (x.rows != g.node_count())
        throw std::invalid_argument("cgcn_forward: feature rows do not match graph");
    if (x.cols != model.layer_dims.front())
        throw std::invalid_argument("cgcn_forward: feature dimension mismatch");

    std::vector<TermPowers> powers;
    for (const auto& t : model.terms) powers.push_back(term_powers(t));

    if (cache) {
        cache->dropped.clear();
        cache->messages.clear();
        cache->preact.clear();
        cache->keep_masks.clear();
    }

    const int layers = model.layer_count();
    DenseMatrix h = x;
    for (int l = 0; l < layers; ++l) {
        DenseMatrix d = std::move(h);
        std::vector<char> mask;
        if (train_mode && model.dropout_p > 0.0) {
            Rng rng(split_seed(dropout_seed, 0xd0, l));
            apply_dropout(d, model.dropout_p, rng, mask);
        }
        DenseMatrix msg = phi_apply(g, model.terms, powers, d);
        DenseMatrix z = matmul(msg, model.weights[l]);
        check_finite(z, l);
        if (cache) {
            cache->dropped.push_back(std::move(d));
            cache->messages.push_back(std::move(msg));
            cache->preact.push_back(z);
            cache->keep_masks.push_back(std::move(mask));
        }
        if (l + 1 < layers) relu_inplace(z);
        h = std::move(z);
    }
    return h;
}

double cgcn_loss_and_grads(const CgcnModel& model, const Graph& g, const DenseMatrix& x,
                           const std::vector<int>& labels, const std::vector<int>& mask,
                           std::uint64_t dropout_seed, bool train_mode, Gradients& grads) {
    ForwardCache cache;
    DenseMatrix logits = cgcn_forward(model, g, x, train_mode, dropout_seed, &cache);

    DenseMatrix grad;
    const double loss = softmax_ce(logits, labels, mask, &grad);

    std::vector<TermPowers> powers;
    for (const auto& t : model.terms) powers.push_back(term_powers(t));

    const int layers = model.layer_count();
    grads.weights.assign(layers, DenseMatrix());
    grads.cgso.assign(model.terms.size(), CgsoParams{});

    const double keep = 1.0 - model.dropout_p;
    for (int l = layers - 1; l >= 0; --l) {
        if (l < layers - 1) {
            const DenseMatrix& z = cache.preact[l];
            for (std::size_t i = 0; i < grad.data.size(); ++i)
                if (z.data[i] <= 0.0) grad.data[i] = 0.0;
        }
        grads.weights[l] = matmul_at_b(cache.messages[l], grad);
        DenseMatrix gm = matmul_a_bt(grad, model.weights[l]);

        DenseMatrix gd(gm.rows, gm.cols);
        for (std::size_t t = 0; t < model.terms.size(); ++t)
            term_grads(g, model.terms[t], powers[t], gm, cache.dropped[l], grads.cgso[t], gd);

        if (train_mode && model.dropout_p > 0.0) {
            const std::vector<char>& km = cache.keep_masks[l];
            for (std::size_t i = 0; i < gd.data.size(); ++i)
                gd.data[i] = km[i] ? gd.data[i] / keep : 0.0;
        }
        grad = std::move(gd);
    }
    return loss;
}

double cgcn_loss(const CgcnModel& model, const Graph& g, const DenseMatrix& x,
                 const std::vector<int>& labels, const std::vector<int>& mask,
                 std::uint64_t dropout_seed, bool train_mode) {
    DenseMatrix logits = cgcn_forward(model, g, x, train_mode, dropout_seed, nullptr);
    return softmax_ce(logits, labels, mask, nullptr);
}

double accuracy(const DenseMatrix& logits, const std::vector<int>& labels,
                const std::vector<int>& mask) {
    if (mask.empty()) return 0.0;
    int hits = 0;
    for (int i : mask) {
        auto row = logits.row(i);
        int best = 0;
        for (int c = 1; c < logits.cols; ++c)
            if (row[c] > row[best]) best = c;
        if (best == labels[i]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(mask.size());
}

AdamState make_adam_state(const CgcnModel& model) {
    AdamState s;
    for (const auto& w : model.weights) {
        s.w_m.emplace_back(w.rows, w.cols);
        s.w_v.emplace_back(w.rows, w.cols);
    }
    s.p_m.assign(model.terms.size(), CgsoParams{});
    s.p_v.assign(model.terms.size(), CgsoParams{});
    return s;
}

namespace {

void adam_update_scalar(double& theta, double grad, double& m, double& v, double lr,
                        const OptimConfig& cfg, double bc1, double bc2) {
    grad += cfg.weight_decay * theta;
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * grad;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * grad * grad;
    theta -= lr * (m / bc1) / (std::sqrt(v / bc2) + cfg.eps);
}

} // namespace

void adam_step(CgcnModel& model, const Gradients& grads, AdamState& state,
               const OptimConfig& cfg) {
    ++state.t;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));

    for (std::size_t l = 0; l < model.weights.size(); ++l)
        for (std::size_t i = 0; i < model.weights[l].data.size(); ++i)
            adam_update_scalar(model.weights[l].data[i], grads.weights[l].data[i],
                               state.w_m[l].data[i], state.w_v[l].data[i], cfg.lr_weights, cfg,
                               bc1, bc2);

    if (!cfg.learn_cgso) return;
    for (std::size_t t = 0; t < model.terms.size(); ++t) {
        CgsoParams& p = model.terms[t].params;
        const CgsoParams& gp = grads.cgso[t];
        CgsoParams& m = state.p_m[t];
        CgsoParams& v = state.p_v[t];
        adam_update_scalar(p.m1, gp.m1, m.m1, v.m1, cfg.lr_weights, cfg, bc1, bc2);
        adam_update_scalar(p.m2, gp.m2, m.m2, v.m2, cfg.lr_weights, cfg, bc1, bc2);
        adam_update_scalar(p.m3, gp.m3, m.m3, v.m3, cfg.lr_weights, cfg, bc1, bc2);
        adam_update_scalar(p.a, gp.a, m.a, v.a, cfg.lr_weights, cfg, bc1, bc2);
        adam_update_scalar(p.e1, gp.e1, m.e1, v.e1, cfg.lr_exponents, cfg, bc1, bc2);
        adam_update_scalar(p.e2, gp.e2, m.e2, v.e2, cfg.lr_exponents, cfg, bc1, bc2);
        adam_update_scalar(p.e3, gp.e3, m.e3, v.e3, cfg.lr_exponents, cfg, bc1, bc2);
    }
}

std::vector<int> DataSplit::nodes_with(int tag) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < split.size(); ++i)
        if (split[i] == tag) out.push_back(static_cast<int>(i));
    return out;
}

TrainReport train_cgcn(CgcnModel& model, const Graph& g, const DenseMatrix& x,
                       const std::vector<int>& labels, const DataSplit& split,
                       const TrainConfig& cfg, bool dirichlet_probe) {
    TrainReport rep;
    const std::vector<int> train_nodes = split.nodes_with(0);
    const std::vector<int> val_nodes = split.nodes_with(1);
    const std::vector<int> test_nodes = split.nodes_with(2);

    AdamState state = make_adam_state(model);
    Gradients grads;

    auto evaluate = [&](double& val_acc, double& test_acc) {
        DenseMatrix logits = cgcn_forward(model, g, x, false, 0, nullptr);
        val_acc = val_nodes.empty() ? 0.0 : accuracy(logits, labels, val_nodes);
        test_acc = test_nodes.empty() ? 0.0 : accuracy(logits, labels, test_nodes);
    };

    if (cfg.epochs == 0) {
        double val_acc, test_acc;
        evaluate(val_acc, test_acc);
        rep.best_val_accuracy = val_acc;
        rep.test_accuracy = test_acc;
        rep.best_epoch = 0;
    }

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        double loss;
        try {
            loss = cgcn_loss_and_grads(model, g, x, labels, train_nodes,
                                       split_seed(cfg.seed, 0xd20, epoch), true, grads);
        } catch (const NonFiniteError& err) {
            rep.diverged = true;
            rep.error = err.what();
            break;
        }
        if (!std::isfinite(loss)) {
            rep.diverged = true;
            rep.error = "non-finite training loss at epoch " + std::to_string(epoch);
            break;
        }
        adam_step(model, grads, state, cfg.optim);

        double val_acc, test_acc;
        evaluate(val_acc, test_acc);
        rep.train_loss.push_back(loss);
        rep.val_accuracy.push_back(val_acc);
        if (rep.best_epoch < 0 || val_acc > rep.best_val_accuracy) {
            rep.best_val_accuracy = val_acc;
            rep.best_epoch = epoch;
            rep.test_accuracy = test_acc;
        }
    }

    for (const auto& t : model.terms) rep.learned_params.push_back(t.params);

    if (dirichlet_probe && !rep.diverged) {
        std::vector<TermPowers> powers;
        for (const auto& t : model.terms) powers.push_back(term_powers(t));
        DenseMatrix h = x;
        for (int l = 0; l < model.layer_count(); ++l) {
            DenseMatrix z = matmul(phi_apply(g, model.terms, powers, h), model.weights[l]);
            if (l + 1 < model.layer_count()) relu_inplace(z);
            h = std::move(z);
            rep.dirichlet_energies.push_back(dirichlet_energy(g, h));
        }
    }
    return rep;
}

SgcModel make_sgc(int in_dim, int out_dim, std::vector<OperatorTermSpec> terms, int k_hops,
                  std::uint64_t seed) {
    if (k_hops < 1) throw std::invalid_argument("make_sgc: k_hops must be >= 1");
    SgcModel m;
    m.terms = std::move(terms);
    m.k_hops = k_hops;
    m.weight = DenseMatrix(in_dim, out_dim);
    Rng rng(split_seed(seed, 0x5bc));
    const double limit = std::sqrt(6.0 / (in_dim + out_dim));
    for (double& v : m.weight.data) v = (2.0 * rng.next_unit() - 1.0) * limit;
    return m;
}

DenseMatrix sgc_forward(const SgcModel& model, const Graph& g, const DenseMatrix& x) {
    std::vector<TermPowers> powers;
    for (const auto& t : model.terms) powers.push_back(term_powers(t));
    DenseMatrix h = x;
    for (int k = 0; k < model.k_hops; ++k) h = phi_apply(g, model.terms, powers, h);
    DenseMatrix logits = matmul(h, model.weight);
    check_finite(logits, model.k_hops);
    return logits;
}

double sgc_loss_and_grads(const SgcModel& model, const Graph& g, const DenseMatrix& x,
                          const std::vector<int>& labels, const std::vector<int>& mask,
                          Gradients& grads) {
    std::vector<TermPowers> powers;
    for (const auto& t : model.terms) powers.push_back(term_powers(t));

    std::vector<DenseMatrix> hs(model.k_hops + 1);
    hs[0] = x;
    for (int k = 0; k < model.k_hops; ++k) hs[k + 1] = phi_apply(g, model.terms, powers, hs[k]);
    DenseMatrix logits = matmul(hs[model.k_hops], model.weight);
    check_finite(logits, model.k_hops);

    DenseMatrix grad;
    const double loss = softmax_ce(logits, labels, mask, &grad);

    grads.weights.assign(1, matmul_at_b(hs[model.k_hops], grad));
    grads.cgso.assign(model.terms.size(), CgsoParams{});

    DenseMatrix gh = matmul_a_bt(grad, model.weight);
    for (int k = model.k_hops; k >= 1; --k) {
        DenseMatrix gd(gh.rows, gh.cols);
        for (std::size_t t = 0; t < model.terms.size(); ++t)
            term_grads(g, model.terms[t], powers[t], gh, hs[k - 1], grads.cgso[t], gd);
        gh = std::move(gd);
    }
    return loss;
}

TrainReport train_sgc(SgcModel& model, const Graph& g, const DenseMatrix& x,
                      const std::vector<int>& labels, const DataSplit& split,
                      const TrainConfig& cfg) {
    TrainReport rep;
    const std::vector<int> train_nodes = split.nodes_with(0);
    const std::vector<int> val_nodes = split.nodes_with(1);
    const std::vector<int> test_nodes = split.nodes_with(2);

    // Reuse the CGCN Adam machinery through a single-layer shim.
    AdamState state;
    state.w_m.emplace_back(model.weight.rows, model.weight.cols);
    state.w_v.emplace_back(model.weight.rows, model.weight.cols);
    state.p_m.assign(model.terms.size(), CgsoParams{});
    state.p_v.assign(model.terms.size(), CgsoParams{});

    Gradients grads;
    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        double loss;
        try {
            loss = sgc_loss_and_grads(model, g, x, labels, train_nodes, grads);
        } catch (const NonFiniteError& err) {
            rep.diverged = true;
            rep.error = err.what();
            break;
        }
        if (!std::isfinite(loss)) {
            rep.diverged = true;
            rep.error = "non-finite training loss at epoch " + std::to_string(epoch);
            break;
        }

        ++state.t;
        const double bc1 = 1.0 - std::pow(cfg.optim.beta1, static_cast<double>(state.t));
        const double bc2 = 1.0 - std::pow(cfg.optim.beta2, static_cast<double>(state.t));
        for (std::size_t i = 0; i < model.weight.data.size(); ++i)
            adam_update_scalar(model.weight.data[i], grads.weights[0].data[i],
                               state.w_m[0].data[i], state.w_v[0].data[i], cfg.optim.lr_weights,
                               cfg.optim, bc1, bc2);
        if (cfg.optim.learn_cgso) {
            for (std::size_t t = 0; t < model.terms.size(); ++t) {
                CgsoParams& p = model.terms[t].params;
                const CgsoParams& gp = grads.cgso[t];
                CgsoParams& m = state.p_m[t];
                CgsoParams& v = state.p_v[t];
                adam_update_scalar(p.m1, gp.m1, m.m1, v.m1, cfg.optim.lr_weights, cfg.optim, bc1, bc2);
                adam_update_scalar(p.m2, gp.m2, m.m2, v.m2, cfg.optim.lr_weights, cfg.optim, bc1, bc2);
                adam_update_scalar(p.m3, gp.m3, m.m3, v.m3, cfg.optim.lr_weights, cfg.optim, bc1, bc2);
                adam_update_scalar(p.a, gp.a, m.a, v.a, cfg.optim.lr_weights, cfg.optim, bc1, bc2);
                adam_update_scalar(p.e1, gp.e1, m.e1, v.e1, cfg.optim.lr_exponents, cfg.optim, bc1, bc2);
                adam_update_scalar(p.e2, gp.e2, m.e2, v.e2, cfg.optim.lr_exponents, cfg.optim, bc1, bc2);
                adam_update_scalar(p.e3, gp.e3, m.e3, v.e3, cfg.optim.lr_exponents, cfg.optim, bc1, bc2);
            }
        }

        DenseMatrix logits = sgc_forward(model, g, x);
        const double val_acc = val_nodes.empty() ? 0.0 : accuracy(logits, labels, val_nodes);
        const double test_acc = test_nodes.empty() ? 0.0 : accuracy(logits, labels, test_nodes);
        rep.train_loss.push_back(loss);
        rep.val_accuracy.push_back(val_acc);
        if (rep.best_epoch < 0 || val_acc > rep.best_val_accuracy) {
            rep.best_val_accuracy = val_acc;
            rep.best_epoch = epoch;
            rep.test_accuracy = test_acc;
        }
    }
    for (const auto& t : model.terms) rep.learned_params.push_back(t.params);
    return rep;
}

double dirichlet_energy(const Graph& g, const DenseMatrix& h) {
    if (h.rows != g.node_count())
        throw std::invalid_argument("dirichlet_energy: row count mismatch");
    const int n = g.node_count();
    std::vector<double> inv_sqrt(n);
    for (int i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(1.0 + g.degree(i));
    double total = 0.0;
    for (int u = 0; u < n; ++u)
        for (int v : g.neighbors(u)) {
            if (v <= u) continue;
            auto hu = h.row(u);
            auto hv = h.row(v);
            double acc = 0.0;
            for (int c = 0; c < h.cols; ++c) {
                const double d = hu[c] * inv_sqrt[u] - hv[c] * inv_sqrt[v];
                acc += d * d;
            }
            total += acc;
        }
    return total / n;
}

std::vector<double*> parameter_pointers(CgcnModel& model, bool include_cgso) {
    std::vector<double*> out;
    for (auto& w : model.weights)
        for (double& v : w.data) out.push_back(&v);
    if (include_cgso)
        for (auto& t : model.terms) {
            CgsoParams& p = t.params;
            for (double* ptr : {&p.m1, &p.m2, &p.m3, &p.e1, &p.e2, &p.e3, &p.a})
                out.push_back(ptr);
        }
    return out;
}

std::vector<double*> parameter_pointers(SgcModel& model, bool include_cgso) {
    std::vector<double*> out;
    for (double& v : model.weight.data) out.push_back(&v);
    if (include_cgso)
        for (auto& t : model.terms) {
            CgsoParams& p = t.params;
            for (double* ptr : {&p.m1, &p.m2, &p.m3, &p.e1, &p.e2, &p.e3, &p.a})
                out.push_back(ptr);
        }
    return out;
}

} // namespace cgso
