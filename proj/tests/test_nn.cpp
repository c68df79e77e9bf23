#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "cgso/centrality.hpp"
#include "cgso/generators.hpp"
#include "cgso/graph.hpp"
#include "cgso/nn.hpp"
#include "cgso/rng.hpp"
#include "cgso/verify.hpp"

using namespace cgso;

namespace {

Graph k3() { return parse_edge_list("0 1\n1 2\n0 2"); }

DenseMatrix dense_phi(const Graph& g, const DiagonalCentrality& v, const CgsoParams& p) {
    const int n = g.node_count();
    DenseMatrix m(n, n);
    auto pw = [&](int i, double e) { return std::exp(e * v.log_entries[i]); };
    for (int i = 0; i < n; ++i) {
        m(i, i) += p.m1 * pw(i, p.e1) + p.m2 * pw(i, p.e2) * p.a * pw(i, p.e3) + p.m3;
        for (int j : g.neighbors(i)) m(i, j) += p.m2 * pw(i, p.e2) * pw(j, p.e3);
    }
    return m;
}

DenseMatrix relu_copy(DenseMatrix m) {
    for (double& v : m.data) v = std::max(0.0, v);
    return m;
}

} // namespace

TEST_CASE("one-layer identity network reproduces the adjacency") {
    Graph g = k3();
    CgcnModel model;
    model.layer_dims = {3, 3};
    model.weights = {DenseMatrix::identity(3)};
    model.terms.push_back({build_diagonal(degree_vector(g)), preset("adjacency")});
    model.dropout_p = 0.0;

    DenseMatrix logits = cgcn_forward(model, g, DenseMatrix::identity(3), false, 0);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(logits(i, j) == doctest::Approx(g.has_edge(i, j) ? 1.0 : 0.0));
}

TEST_CASE("all-zero magnitudes give a zero network") {
    Graph g = k3();
    CgcnModel model;
    model.layer_dims = {3, 2};
    model.weights = {DenseMatrix(3, 2, 1.0)};
    model.terms.push_back({build_diagonal(degree_vector(g)), CgsoParams{}});
    model.dropout_p = 0.0;
    DenseMatrix logits = cgcn_forward(model, g, DenseMatrix::identity(3), false, 0);
    for (double v : logits.data) CHECK(v == 0.0);
}

TEST_CASE("two-layer forward matches an independent dense composition") {
    Rng rng(37);
    Graph g = random_connected_graph(6, 0.4, rng);
    auto diag = build_diagonal(kcore_numbers(g));
    CgsoParams p{0.3, 1.1, -0.2, 0.5, -0.8, 0.4, 0.6};

    CgcnModel model = make_cgcn({4, 5, 3}, {{diag, p}}, 0.0, 99);
    DenseMatrix x(6, 4);
    for (double& v : x.data) v = rng.next_normal();

    DenseMatrix logits = cgcn_forward(model, g, x, false, 0);

    DenseMatrix phi = dense_phi(g, diag, p);
    DenseMatrix h1 = relu_copy(matmul(matmul(phi, x), model.weights[0]));
    DenseMatrix want = matmul(matmul(phi, h1), model.weights[1]);
    for (std::size_t i = 0; i < want.data.size(); ++i)
        CHECK(logits.data[i] == doctest::Approx(want.data[i]).epsilon(1e-10));
}

TEST_CASE("zero weights give the uniform-softmax loss") {
    Graph g = k3();
    CgcnModel model;
    model.layer_dims = {2, 4};
    model.weights = {DenseMatrix(2, 4)};
    model.terms.push_back({build_diagonal(degree_vector(g)), preset("mean_aggregation")});
    model.dropout_p = 0.0;
    DenseMatrix x(3, 2, 1.0);
    const double loss = cgcn_loss(model, g, x, {0, 1, 2}, {0, 1, 2}, 0, false);
    CHECK(loss == doctest::Approx(std::log(4.0)).epsilon(1e-12));
}

TEST_CASE("adam leaves parameters alone on zero gradients without decay") {
    Graph g = k3();
    CgcnModel model = make_cgcn({2, 2}, {{build_diagonal(degree_vector(g)), preset("adjacency")}},
                                0.0, 5);
    CgcnModel before = model;
    AdamState state = make_adam_state(model);
    Gradients zero;
    zero.weights = {DenseMatrix(2, 2)};
    zero.cgso = {CgsoParams{}};
    OptimConfig cfg;
    cfg.weight_decay = 0.0;
    adam_step(model, zero, state, cfg);
    CHECK(model.weights[0].data == before.weights[0].data);
    CHECK(model.terms[0].params == before.terms[0].params);

    // With decay the magnitudes shrink.
    cfg.weight_decay = 5e-4;
    model.weights[0](0, 0) = 2.0;
    const double prev = model.weights[0](0, 0);
    adam_step(model, zero, state, cfg);
    CHECK(std::abs(model.weights[0](0, 0)) < std::abs(prev));
}

TEST_CASE("first adam step moves opposite the gradient at learning-rate scale") {
    Graph g = k3();
    CgcnModel model = make_cgcn({2, 2}, {{build_diagonal(degree_vector(g)), preset("adjacency")}},
                                0.0, 6);
    AdamState state = make_adam_state(model);
    Gradients grads;
    grads.weights = {DenseMatrix(2, 2)};
    grads.weights[0](0, 0) = 0.7;
    grads.weights[0](1, 1) = -1.3;
    grads.cgso = {CgsoParams{}};
    OptimConfig cfg;
    cfg.weight_decay = 0.0;
    const double w00 = model.weights[0](0, 0), w11 = model.weights[0](1, 1);
    adam_step(model, grads, state, cfg);
    CHECK(model.weights[0](0, 0) < w00);
    CHECK(model.weights[0](1, 1) > w11);
    CHECK(std::abs(model.weights[0](0, 0) - w00) <= cfg.lr_weights * 1.0001);
    CHECK(std::abs(model.weights[0](0, 0) - w00) >= cfg.lr_weights * 0.99);
}

TEST_CASE("adam drives a 1-d quadratic to its closed-form minimum") {
    Graph g = parse_edge_list("0 1");
    CgcnModel model;
    model.layer_dims = {1, 1};
    model.weights = {DenseMatrix(1, 1)};
    model.terms.push_back({build_diagonal(degree_vector(g)), preset("adjacency")});
    model.dropout_p = 0.0;
    AdamState state = make_adam_state(model);
    OptimConfig cfg;
    cfg.lr_weights = 0.05;
    cfg.weight_decay = 0.0;
    cfg.learn_cgso = false;
    const double target = 1.0;
    Gradients grads;
    grads.weights = {DenseMatrix(1, 1)};
    grads.cgso = {CgsoParams{}};
    for (int step = 0; step < 200; ++step) {
        grads.weights[0](0, 0) = 2.0 * (model.weights[0](0, 0) - target);
        adam_step(model, grads, state, cfg);
    }
    CHECK(model.weights[0](0, 0) == doctest::Approx(target).epsilon(1e-3));
}

TEST_CASE("analytic gradients agree with finite differences") {
    CHECK(check_gradients(1234, 4).pass);
}

TEST_CASE("frozen normalized-adjacency network equals a hand-coded layer stack") {
    Rng rng(70);
    Graph g = random_connected_graph(9, 0.35, rng);
    auto diag = build_diagonal(degree_vector(g));
    CgcnModel model = make_cgcn({3, 6, 2}, {{diag, preset("normalized_adjacency")}}, 0.0, 8);
    DenseMatrix x(9, 3);
    for (double& v : x.data) v = rng.next_normal();

    const int n = g.node_count();
    DenseMatrix ahat(n, n);
    for (int i = 0; i < n; ++i) {
        const double di = 1.0 / std::sqrt(static_cast<double>(g.degree(i)));
        ahat(i, i) = di * di; // the a = 1 self-loop
        for (int j : g.neighbors(i))
            ahat(i, j) = di / std::sqrt(static_cast<double>(g.degree(j)));
    }
    DenseMatrix h1 = relu_copy(matmul(matmul(ahat, x), model.weights[0]));
    DenseMatrix want = matmul(matmul(ahat, h1), model.weights[1]);
    DenseMatrix got = cgcn_forward(model, g, x, false, 0);
    for (std::size_t i = 0; i < want.data.size(); ++i)
        CHECK(got.data[i] == doctest::Approx(want.data[i]).epsilon(1e-10));
}

TEST_CASE("adding a zero-magnitude second term leaves the forward pass unchanged") {
    Rng rng(71);
    Graph g = random_connected_graph(8, 0.4, rng);
    auto d = build_diagonal(degree_vector(g));
    auto core = build_diagonal(kcore_numbers(g));
    CgcnModel base = make_cgcn({3, 4, 2}, {{d, preset("mean_aggregation")}}, 0.0, 9);

    CgcnModel widened = base;
    CgsoParams zero{};
    zero.e2 = 0.3; // exponents may be anything while the magnitudes are zero
    widened.terms.push_back({core, zero});

    DenseMatrix x(8, 3);
    for (double& v : x.data) v = rng.next_normal();
    DenseMatrix a = cgcn_forward(base, g, x, false, 0);
    DenseMatrix b = cgcn_forward(widened, g, x, false, 0);
    for (std::size_t i = 0; i < a.data.size(); ++i) CHECK(a.data[i] == b.data[i]);
}

namespace {

struct TaskData {
    Graph graph;
    DenseMatrix x;
    std::vector<int> labels;
    DataSplit split;
};

TaskData block_task(int block_nodes, double noise, std::uint64_t seed) {
    SbbamParams sp;
    sp.block_sizes = {block_nodes, block_nodes, block_nodes};
    sp.r_per_block = {3, 5, 7};
    sp.inter_p = {{0.0, 0.1, 0.1}, {0.1, 0.0, 0.1}, {0.1, 0.1, 0.0}};
    sp.seed = seed;
    auto res = generate_sbbam(sp);

    TaskData data;
    data.graph = std::move(res.graph);
    data.labels = res.truth.labels;
    const int n = data.graph.node_count();
    data.x = DenseMatrix(n, 3);
    Rng rng(split_seed(seed, 0xfea));
    for (int i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c)
            data.x(i, c) = (data.labels[i] == c ? 1.0 : 0.0) + noise * rng.next_normal();

    data.split.split.resize(n);
    Rng srng(split_seed(seed, 0x3511));
    for (int i = 0; i < n; ++i) {
        const double u = srng.next_unit();
        data.split.split[i] = u < 0.6 ? 0 : (u < 0.8 ? 1 : 2);
    }
    return data;
}

} // namespace

TEST_CASE("training is deterministic given the seed") {
    TaskData data = block_task(20, 0.5, 404);
    auto diag = build_diagonal(kcore_numbers(data.graph));
    TrainConfig cfg;
    cfg.epochs = 12;
    cfg.seed = 2718;

    CgcnModel m1 = make_cgcn({3, 16, 3}, {{diag, preset("mean_aggregation")}}, 0.5, cfg.seed);
    CgcnModel m2 = make_cgcn({3, 16, 3}, {{diag, preset("mean_aggregation")}}, 0.5, cfg.seed);
    TrainReport r1 = train_cgcn(m1, data.graph, data.x, data.labels, data.split, cfg);
    TrainReport r2 = train_cgcn(m2, data.graph, data.x, data.labels, data.split, cfg);
    CHECK(r1.train_loss == r2.train_loss);
    CHECK(r1.val_accuracy == r2.val_accuracy);
    CHECK(r1.test_accuracy == r2.test_accuracy);
    CHECK(m1.weights[0].data == m2.weights[0].data);
}

TEST_CASE("zero-epoch training echoes the initialization") {
    TaskData data = block_task(10, 0.5, 505);
    auto diag = build_diagonal(degree_vector(data.graph));
    CgcnModel model = make_cgcn({3, 8, 3}, {{diag, preset("mean_aggregation")}}, 0.5, 1);
    const CgsoParams init = model.terms[0].params;
    TrainConfig cfg;
    cfg.epochs = 0;
    TrainReport rep = train_cgcn(model, data.graph, data.x, data.labels, data.split, cfg);
    CHECK(rep.train_loss.empty());
    CHECK(rep.learned_params[0] == init);
    CHECK_FALSE(rep.diverged);
}

TEST_CASE("learnable operator trains at least as well as the frozen preset") {
    TaskData data = block_task(20, 0.5, 606);
    auto diag = build_diagonal(kcore_numbers(data.graph));
    TrainConfig cfg;
    cfg.epochs = 60;
    cfg.seed = 31415;

    CgcnModel frozen = make_cgcn({3, 16, 3}, {{diag, preset("mean_aggregation")}}, 0.5, cfg.seed);
    CgcnModel learnable = frozen;
    TrainConfig frozen_cfg = cfg;
    frozen_cfg.optim.learn_cgso = false;
    TrainReport fr = train_cgcn(frozen, data.graph, data.x, data.labels, data.split, frozen_cfg);
    TrainReport lr = train_cgcn(learnable, data.graph, data.x, data.labels, data.split, cfg);
    CHECK(lr.train_loss.back() <= fr.train_loss.back() + 1e-6);
}

TEST_CASE("divergence aborts with a report instead of crashing") {
    TaskData data = block_task(10, 0.5, 707);
    auto diag = build_diagonal(degree_vector(data.graph));
    CgcnModel model = make_cgcn({3, 4, 3}, {{diag, preset("adjacency")}}, 0.0, 2);
    for (double& v : model.weights[0].data) v = 1e200;
    TrainConfig cfg;
    cfg.epochs = 3;
    TrainReport rep = train_cgcn(model, data.graph, data.x, data.labels, data.split, cfg);
    CHECK(rep.diverged);
    CHECK(!rep.error.empty());
}

TEST_CASE("simple graph convolution composes operator applications") {
    Graph g = k3();
    auto diag = build_diagonal(degree_vector(g));
    SgcModel model;
    model.terms.push_back({diag, preset("adjacency")});
    model.k_hops = 1;
    model.weight = DenseMatrix::identity(3);

    DenseMatrix x = DenseMatrix::identity(3);
    DenseMatrix one_hop = sgc_forward(model, g, x);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(one_hop(i, j) == doctest::Approx(g.has_edge(i, j) ? 1.0 : 0.0));

    model.k_hops = 2;
    DenseMatrix two_hop = sgc_forward(model, g, x);
    auto op = build_parametrized(g, diag, preset("adjacency"));
    DenseMatrix tmp, want;
    op.apply_rows(x, tmp);
    op.apply_rows(tmp, want);
    for (std::size_t i = 0; i < want.data.size(); ++i)
        CHECK(two_hop.data[i] == doctest::Approx(want.data[i]).epsilon(1e-12));
}

TEST_CASE("simple graph convolution trains within ten points of the full network") {
    TaskData data = block_task(30, 0.5, 808);
    auto diag = build_diagonal(kcore_numbers(data.graph));
    TrainConfig cfg;
    cfg.epochs = 120;
    cfg.seed = 161803;

    CgcnModel cgcn = make_cgcn({3, 16, 3}, {{diag, preset("mean_aggregation")}}, 0.5, cfg.seed);
    TrainReport full = train_cgcn(cgcn, data.graph, data.x, data.labels, data.split, cfg);

    SgcModel sgc = make_sgc(3, 3, {{diag, preset("mean_aggregation")}}, 2, cfg.seed);
    TrainReport simple = train_sgc(sgc, data.graph, data.x, data.labels, data.split, cfg);

    CHECK_FALSE(full.diverged);
    CHECK_FALSE(simple.diverged);
    CHECK(std::abs(full.test_accuracy - simple.test_accuracy) <= 0.10 + 1e-12);
}

TEST_CASE("dirichlet energy") {
    // Constant rows on a regular graph.
    Graph reg = parse_edge_list("0 1\n1 2\n2 3\n3 0");
    DenseMatrix constant(4, 2, 3.0);
    CHECK(dirichlet_energy(reg, constant) == doctest::Approx(0.0));

    // Component indicators on a disconnected graph.
    Graph two = parse_edge_list("0 1\n2 3");
    DenseMatrix ind(4, 2);
    ind(0, 0) = ind(1, 0) = 1.0;
    ind(2, 1) = ind(3, 1) = 1.0;
    CHECK(dirichlet_energy(two, ind) == doctest::Approx(0.0));

    // Hand-computed edge graph: h0 = (1,0), h1 = (0,1), degrees one, so the
    // normalized difference has squared norm 1 and the energy is 1/2.
    Graph k2 = parse_edge_list("0 1");
    DenseMatrix h(2, 2);
    h(0, 0) = 1.0;
    h(1, 1) = 1.0;
    CHECK(dirichlet_energy(k2, h) == doctest::Approx(0.5));

    // Brute-force oracle on a random instance.
    Rng rng(91);
    Graph g = random_connected_graph(10, 0.3, rng);
    DenseMatrix hr(10, 3);
    for (double& v : hr.data) v = rng.next_normal();
    double want = 0.0;
    for (auto [u, v] : g.edges()) {
        for (int c = 0; c < 3; ++c) {
            const double d = hr(u, c) / std::sqrt(1.0 + g.degree(u)) -
                             hr(v, c) / std::sqrt(1.0 + g.degree(v));
            want += d * d;
        }
    }
    want /= 10.0;
    CHECK(dirichlet_energy(g, hr) == doctest::Approx(want).epsilon(1e-12));
}
