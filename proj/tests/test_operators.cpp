#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "cgso/centrality.hpp"
#include "cgso/graph.hpp"
#include "cgso/operators.hpp"
#include "cgso/rng.hpp"
#include "cgso/verify.hpp"

using namespace cgso;

namespace {

Graph k3() { return parse_edge_list("0 1\n1 2\n0 2"); }

// The operator written out densely, straight from the defining formula --
// the independent route the matrix-free apply is checked against.
DenseMatrix dense_from_formula(const Graph& g, const DiagonalCentrality& v,
                               const CgsoParams& p) {
    const int n = g.node_count();
    DenseMatrix m(n, n);
    auto pw = [&](int i, double e) { return std::exp(e * v.log_entries[i]); };
    for (int i = 0; i < n; ++i) {
        m(i, i) += p.m1 * pw(i, p.e1) + p.m2 * pw(i, p.e2) * p.a * pw(i, p.e3) + p.m3;
        for (int j : g.neighbors(i)) m(i, j) += p.m2 * pw(i, p.e2) * pw(j, p.e3);
    }
    return m;
}

CgsoParams random_params(Rng& rng) {
    CgsoParams p;
    p.m1 = 2.0 * rng.next_unit() - 1.0;
    p.m2 = 2.0 * rng.next_unit() - 1.0;
    p.m3 = 2.0 * rng.next_unit() - 1.0;
    p.e1 = 3.0 * rng.next_unit() - 1.5;
    p.e2 = 3.0 * rng.next_unit() - 1.5;
    p.e3 = 3.0 * rng.next_unit() - 1.5;
    p.a = 2.0 * rng.next_unit() - 1.0;
    return p;
}

} // namespace

TEST_CASE("preset table") {
    auto expect = [](const char* name, CgsoParams want) {
        CgsoParams got = preset(name);
        CAPTURE(name);
        CHECK(got == want);
    };
    expect("adjacency", {0, 1, 0, 0, 0, 0, 0});
    expect("laplacian", {1, -1, 0, 1, 0, 0, 0});
    expect("signless_laplacian", {1, 1, 0, 1, 0, 0, 0});
    expect("rw_laplacian", {0, -1, 1, 0, -1, 0, 0});
    expect("sym_laplacian", {0, -1, 1, 0, -0.5, -0.5, 0});
    expect("normalized_adjacency", {0, 1, 0, 0, -0.5, -0.5, 1});
    expect("mean_aggregation", {0, 1, 0, 0, -1, 0, 0});

    CHECK_THROWS_WITH_AS(preset("bogus"), doctest::Contains("mean_aggregation"),
                         std::invalid_argument);
}

TEST_CASE("markov operator of the triangle is half the adjacency") {
    Graph g = k3();
    auto op = markov_operator(g, build_diagonal(degree_vector(g)));
    DenseMatrix m = op.materialize_dense();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(m(i, j) == doctest::Approx(i == j ? 0.0 : 0.5));
}

TEST_CASE("markov operator with a walk-count normalization on the path") {
    Graph g = parse_edge_list("0 1\n1 2");
    auto diag = build_diagonal(walk_counts(g, 2)); // diag(2, 2, 2)
    CHECK(diag.entries == std::vector<double>{2, 2, 2});
    DenseMatrix m = markov_operator(g, diag).materialize_dense();
    // (1/2) A(P3): eigenvalues +-sqrt(2)/2 and 0 (adjacency spectrum
    // {+-sqrt 2, 0} from lambda^3 = 2 lambda, halved).
    Eigen::MatrixXd em(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) em(i, j) = m(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> es(em);
    std::vector<double> eigs;
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(es.eigenvalues()[i].imag()) < 1e-10);
        eigs.push_back(es.eigenvalues()[i].real());
    }
    std::sort(eigs.begin(), eigs.end());
    CHECK(eigs[0] == doctest::Approx(-std::sqrt(2.0) / 2.0));
    CHECK(eigs[1] == doctest::Approx(0.0));
    CHECK(eigs[2] == doctest::Approx(std::sqrt(2.0) / 2.0));
}

TEST_CASE("mean aggregation fixes constant vectors") {
    Rng rng(5);
    Graph g = random_connected_graph(17, 0.3, rng);
    auto op = markov_operator(g, build_diagonal(degree_vector(g)));
    std::vector<double> ones(g.node_count(), 1.0);
    auto out = op.apply(ones);
    for (double v : out) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("identity parameterization reproduces the adjacency") {
    Graph g = parse_edge_list("0 1\n1 2");
    auto diag = build_diagonal(degree_vector(g));
    DenseMatrix m = build_parametrized(g, diag, preset("adjacency")).materialize_dense();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(m(i, j) == doctest::Approx(g.has_edge(i, j) ? 1.0 : 0.0));
}

TEST_CASE("normalized adjacency on an edge graph is all ones") {
    Graph g = parse_edge_list("0 1");
    auto diag = build_diagonal(degree_vector(g)); // identity
    DenseMatrix m =
        build_parametrized(g, diag, CgsoParams{0, 1, 0, 0, -0.5, -0.5, 1}).materialize_dense();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(m(i, j) == doctest::Approx(1.0));
}

TEST_CASE("laplacian preset with degree centrality gives D - A") {
    Rng rng(13);
    Graph g = random_connected_graph(12, 0.3, rng);
    auto diag = build_diagonal(degree_vector(g));
    DenseMatrix m = build_parametrized(g, diag, preset("laplacian")).materialize_dense();
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) {
            const double want = (i == j) ? g.degree(i) : (g.has_edge(i, j) ? -1.0 : 0.0);
            CHECK(m(i, j) == doctest::Approx(want).epsilon(1e-12));
        }
}

TEST_CASE("combine sums applies and keeps graphs consistent") {
    Graph g = k3();
    auto d = build_diagonal(degree_vector(g));
    auto core = build_diagonal(kcore_numbers(g));

    auto adj = build_parametrized(g, d, preset("adjacency"));
    auto zero = build_parametrized(g, d, CgsoParams{});
    DenseMatrix same = combine(adj, zero).materialize_dense();
    DenseMatrix base = adj.materialize_dense();
    for (std::size_t i = 0; i < same.data.size(); ++i)
        CHECK(same.data[i] == doctest::Approx(base.data[i]));

    DenseMatrix doubled = combine(adj, adj).materialize_dense();
    for (std::size_t i = 0; i < doubled.data.size(); ++i)
        CHECK(doubled.data[i] == doctest::Approx(2.0 * base.data[i]));

    // On the triangle the core numbers equal the degrees, so mean
    // aggregation in both centralities sums to the full adjacency.
    auto mean_d = build_parametrized(g, d, preset("mean_aggregation"));
    auto mean_core = build_parametrized(g, core, preset("mean_aggregation"));
    DenseMatrix summed = combine(mean_d, mean_core).materialize_dense();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(summed(i, j) == doctest::Approx(g.has_edge(i, j) ? 1.0 : 0.0));

    Graph other = k3();
    auto foreign = build_parametrized(other, build_diagonal(degree_vector(other)),
                                      preset("adjacency"));
    CHECK_THROWS_AS(combine(adj, foreign), std::invalid_argument);
}

TEST_CASE("materialize matches the formula written out densely") {
    Rng rng(101);
    for (int t = 0; t < 12; ++t) {
        Graph g = random_connected_graph(8, 0.35, rng);
        auto diag = build_diagonal(t % 2 == 0 ? degree_vector(g) : kcore_numbers(g));
        CgsoParams p = random_params(rng);
        DenseMatrix got = build_parametrized(g, diag, p).materialize_dense();
        DenseMatrix want = dense_from_formula(g, diag, p);
        for (std::size_t i = 0; i < got.data.size(); ++i)
            CHECK(got.data[i] == doctest::Approx(want.data[i]).epsilon(1e-12));
    }
}

TEST_CASE("apply is linear") {
    Rng rng(55);
    Graph g = random_connected_graph(20, 0.25, rng);
    auto op = build_parametrized(g, build_diagonal(pagerank(g)), random_params(rng));
    const int n = g.node_count();
    std::vector<double> x(n), y(n), axby(n);
    for (int i = 0; i < n; ++i) {
        x[i] = rng.next_normal();
        y[i] = rng.next_normal();
    }
    const double alpha = 1.7, beta = -0.4;
    for (int i = 0; i < n; ++i) axby[i] = alpha * x[i] + beta * y[i];
    auto lhs = op.apply(axby);
    auto ax = op.apply(x);
    auto by = op.apply(y);
    for (int i = 0; i < n; ++i)
        CHECK(lhs[i] == doctest::Approx(alpha * ax[i] + beta * by[i]).epsilon(1e-12));
}

TEST_CASE("off-diagonal sparsity pattern matches the edge set") {
    Rng rng(77);
    for (int t = 0; t < 8; ++t) {
        Graph g = random_connected_graph(10, 0.3, rng);
        CgsoParams p = random_params(rng);
        p.m2 = 0.5 + rng.next_unit(); // keep the adjacency term alive
        DenseMatrix m =
            build_parametrized(g, build_diagonal(degree_vector(g)), p).materialize_dense();
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                if (i == j) continue;
                if (g.has_edge(i, j))
                    CHECK(std::abs(m(i, j)) > 1e-12);
                else
                    CHECK(m(i, j) == 0.0);
            }
    }
}

TEST_CASE("equal exponents make the adjacency term symmetric") {
    Rng rng(88);
    Graph g = random_connected_graph(14, 0.3, rng);
    CgsoParams p{};
    p.m2 = 1.3;
    p.e2 = p.e3 = -0.7;
    p.a = 0.9;
    DenseMatrix m = build_parametrized(g, build_diagonal(walk_counts(g, 2)), p)
                        .materialize_dense();
    for (int i = 0; i < m.rows; ++i)
        for (int j = i + 1; j < m.cols; ++j)
            CHECK(m(i, j) == doctest::Approx(m(j, i)).epsilon(1e-12));
}

TEST_CASE("swapping the exponents preserves the eigenvalue multiset") {
    Rng rng(202);
    Graph g = random_connected_graph(11, 0.3, rng);
    auto diag = build_diagonal(pagerank(g));
    CgsoParams p{};
    p.m2 = 1.0;
    p.e2 = -1.2;
    p.e3 = 0.4;
    auto eigs_of = [&](const CgsoParams& params) {
        DenseMatrix m = build_parametrized(g, diag, params).materialize_dense();
        Eigen::MatrixXd em(m.rows, m.cols);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) em(i, j) = m(i, j);
        Eigen::EigenSolver<Eigen::MatrixXd> es(em);
        std::vector<double> out;
        for (int i = 0; i < m.rows; ++i) {
            CHECK(std::abs(es.eigenvalues()[i].imag()) < 1e-8);
            out.push_back(es.eigenvalues()[i].real());
        }
        std::sort(out.begin(), out.end());
        return out;
    };
    CgsoParams swapped = p;
    std::swap(swapped.e2, swapped.e3);
    auto a = eigs_of(p);
    auto b = eigs_of(swapped);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-8));
}

TEST_CASE("apply stays matrix-free past the dense limit") {
    // A path with more nodes than the dense cap: materialization refuses,
    // application works.
    const int n = 6000;
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
    Graph g = Graph::from_edges(n, edges);
    auto op = markov_operator(g, build_diagonal(degree_vector(g)));
    CHECK_THROWS_WITH_AS(op.materialize_dense(), doctest::Contains("matrix-free"),
                         std::runtime_error);
    std::vector<double> x(n, 1.0);
    auto y = op.apply(x);
    CHECK(y[0] == doctest::Approx(1.0));
    CHECK(y[n / 2] == doctest::Approx(1.0));
}
