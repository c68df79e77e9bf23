// Command-line driver: every capability behind seeded, file-based
// subcommands with a reproducibility manifest next to every output set.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cgso/centrality.hpp"
#include "cgso/clustering.hpp"
#include "cgso/generators.hpp"
#include "cgso/graph.hpp"
#include "cgso/io.hpp"
#include "cgso/nn.hpp"
#include "cgso/operators.hpp"
#include "cgso/rng.hpp"
#include "cgso/spectral.hpp"
#include "cgso/verify.hpp"

using json = nlohmann::json;
namespace fs = std::filesystem;
using namespace cgso;

namespace {

int default_dense_limit() {
    if (const char* env = std::getenv("CGSO_DENSE_LIMIT")) {
        try {
            return std::max(1, std::stoi(env));
        } catch (...) {
            throw std::runtime_error("CGSO_DENSE_LIMIT is not an integer");
        }
    }
    return CgsoOperator::kDefaultDenseLimit;
}

// Collects everything the manifest needs while a subcommand runs.
class RunContext {
public:
    RunContext(int argc, char** argv) : start_(std::chrono::steady_clock::now()) {
        std::ostringstream cmd;
        for (int i = 0; i < argc; ++i) cmd << (i ? " " : "") << argv[i];
        command_line_ = cmd.str();
    }

    void set_output_dir(const std::string& dir) {
        out_dir_ = dir;
        fs::create_directories(dir);
    }

    void note_input(const std::string& path, const std::string& content) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a64(content)));
        input_hashes_[path] = buf;
    }

    std::string read_input(const std::string& path) {
        std::string content = read_text_file(path);
        note_input(path, content);
        return content;
    }

    void write_output(const std::string& filename, const std::string& content) {
        write_file_atomic((fs::path(out_dir_) / filename).string(), content);
        outputs_.push_back(filename);
    }

    void finalize(std::uint64_t seed, const json& resolved_config) {
        if (out_dir_.empty()) return;
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        json manifest;
        manifest["command_line"] = command_line_;
        manifest["resolved_config"] = resolved_config;
        manifest["seed"] = seed;
        manifest["input_hashes"] = input_hashes_;
        manifest["outputs"] = outputs_;
        manifest["duration_seconds"] = secs;
        write_file_atomic((fs::path(out_dir_) / "manifest.json").string(),
                          manifest.dump(2) + "\n");
    }

private:
    std::chrono::steady_clock::time_point start_;
    std::string command_line_;
    std::string out_dir_;
    json input_hashes_ = json::object();
    std::vector<std::string> outputs_;
};

json params_to_json(const CgsoParams& p) {
    return json{{"m1", p.m1}, {"m2", p.m2}, {"m3", p.m3}, {"e1", p.e1},
                {"e2", p.e2}, {"e3", p.e3}, {"a", p.a}};
}

CgsoParams params_from_json(const json& j) {
    CgsoParams p;
    p.m1 = j.at("m1");
    p.m2 = j.at("m2");
    p.m3 = j.at("m3");
    p.e1 = j.at("e1");
    p.e2 = j.at("e2");
    p.e3 = j.at("e3");
    p.a = j.at("a");
    return p;
}

// "--gso preset:NAME" or "--gso params:FILE".
CgsoParams resolve_gso(const std::string& spec, RunContext& ctx) {
    const auto colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string head = spec.substr(0, colon), tail = spec.substr(colon + 1);
        if (head == "preset") return preset(tail);
        if (head == "params") return params_from_json(json::parse(ctx.read_input(tail)));
    }
    throw std::runtime_error("--gso expects preset:NAME or params:FILE, got '" + spec + "'");
}

CentralityKind parse_centrality_kind(const std::string& name) {
    if (name == "degree") return CentralityKind::Degree;
    if (name == "kcore") return CentralityKind::KCore;
    if (name == "pagerank") return CentralityKind::PageRank;
    if (name == "walks") return CentralityKind::WalkCount;
    throw std::runtime_error("unknown centrality '" + name +
                             "'; valid: degree kcore pagerank walks");
}

struct GraphOptions {
    std::string graph_path;
    bool whole_graph = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--graph", graph_path, "edge-list file")->required();
        cmd->add_flag("--whole-graph", whole_graph,
                      "skip the default largest-component preprocessing");
    }
};

struct LoadedGraph {
    Graph graph;
    int full_node_count = 0;
    std::vector<int> new_to_old; // empty if the graph was used whole
};

LoadedGraph load_graph(const GraphOptions& opts, RunContext& ctx) {
    LoadedGraph out;
    ParseStats stats;
    out.graph = parse_edge_list(ctx.read_input(opts.graph_path), &stats);
    if (stats.self_loops_dropped > 0)
        std::cerr << "warning: dropped " << stats.self_loops_dropped << " self-loop(s) from "
                  << opts.graph_path << "\n";
    out.full_node_count = out.graph.node_count();
    if (!opts.whole_graph) {
        auto sub = largest_component(out.graph);
        if (sub.graph.node_count() != out.graph.node_count()) {
            out.graph = std::move(sub.graph);
            out.new_to_old = std::move(sub.new_to_old);
        }
    }
    return out;
}

void maybe_write_node_map(const LoadedGraph& g, RunContext& ctx) {
    if (g.new_to_old.empty()) return;
    std::ostringstream csv;
    csv << "new,old\n";
    for (std::size_t i = 0; i < g.new_to_old.size(); ++i)
        csv << i << "," << g.new_to_old[i] << "\n";
    ctx.write_output("node_map.csv", csv.str());
}

// Remaps labels indexed by original node ids onto the working graph.
Partition load_truth(const std::string& path, const LoadedGraph& lg, RunContext& ctx) {
    auto raw = read_node_int_csv(ctx.read_input(path), lg.full_node_count);
    std::vector<int> mapped;
    if (lg.new_to_old.empty()) {
        mapped = raw;
    } else {
        for (int old_id : lg.new_to_old) mapped.push_back(raw[old_id]);
    }
    return canonicalize(mapped);
}

struct CentralityOptions {
    std::string kind = "degree";
    int walk_length = 2;
    double damping = 0.85;
    double tol = 1e-10;
    int max_iter = 1000;

    void attach(CLI::App* cmd) {
        cmd->add_option("--centrality", kind, "degree|kcore|pagerank|walks")
            ->default_val("degree");
        cmd->add_option("--walk-length", walk_length, "walk length for --centrality walks")
            ->default_val(2);
        cmd->add_option("--damping", damping, "PageRank damping factor")->default_val(0.85);
        cmd->add_option("--tol", tol, "PageRank convergence tolerance")->default_val(1e-10);
        cmd->add_option("--max-iter", max_iter, "PageRank iteration cap")->default_val(1000);
    }

    CentralityVector compute(const Graph& g) const {
        return compute_centrality(g, parse_centrality_kind(kind), walk_length, damping, tol,
                                  max_iter);
    }
    json to_json() const {
        return json{{"kind", kind},
                    {"walk_length", walk_length},
                    {"damping", damping},
                    {"tolerance", tol},
                    {"max_iter", max_iter}};
    }
};

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
    return out;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<int>(v));
    return out;
}

std::string labels_csv(const std::vector<int>& labels, const std::string& name) {
    std::ostringstream csv;
    csv << "node," << name << "\n";
    for (std::size_t i = 0; i < labels.size(); ++i) csv << i << "," << labels[i] << "\n";
    return csv.str();
}

int cmd_generate_ba(RunContext& ctx, const BaParams& p, const std::string& out_dir) {
    ctx.set_output_dir(out_dir);
    Graph g = generate_ba(p);
    ctx.write_output("edges.txt", serialize_edge_list(g));
    json meta{{"model", "ba"},
              {"n", p.n},
              {"n0", p.n0},
              {"r0", p.r0},
              {"r", p.r},
              {"seed", p.seed},
              {"edges", g.edge_count()},
              {"expected_avg_degree", expected_avg_degree(p.n, p.n0, p.r0, p.r)}};
    ctx.write_output("meta.json", meta.dump(2) + "\n");
    ctx.finalize(p.seed, meta);
    return 0;
}

int cmd_generate_sbbam(RunContext& ctx, const SbbamParams& p, double feature_noise,
                       const std::vector<double>& splits, const std::string& out_dir) {
    ctx.set_output_dir(out_dir);
    auto res = generate_sbbam(p);
    ctx.write_output("edges.txt", serialize_edge_list(res.graph));
    ctx.write_output("labels.csv", labels_csv(res.truth.labels, "block"));

    json meta{{"model", "sbbam"},
              {"block_sizes", p.block_sizes},
              {"r_per_block", p.r_per_block},
              {"inter_p", p.inter_p},
              {"n0_per_block", res.resolved_n0},
              {"r0_per_block", res.resolved_r0},
              {"seed", p.seed},
              {"nodes", res.graph.node_count()},
              {"edges", res.graph.edge_count()}};

    if (feature_noise >= 0.0) {
        // Block one-hot features with Gaussian noise, plus split masks, so a
        // generated directory trains end to end.
        const int n = res.graph.node_count();
        const int k = res.truth.k;
        Rng frng(split_seed(p.seed, 0xfea7));
        std::ostringstream feat;
        for (int c = 0; c < k; ++c) feat << (c ? "," : "") << "f" << c;
        feat << "\n";
        for (int i = 0; i < n; ++i) {
            for (int c = 0; c < k; ++c) {
                const double v =
                    (res.truth.labels[i] == c ? 1.0 : 0.0) + feature_noise * frng.next_normal();
                feat << (c ? "," : "") << format_double(v);
            }
            feat << "\n";
        }
        ctx.write_output("features.csv", feat.str());

        if (splits.size() != 3 || splits[0] + splits[1] + splits[2] > 1.0 + 1e-9)
            throw std::runtime_error("--splits expects three fractions summing to at most 1");
        Rng srng(split_seed(p.seed, 0x3511));
        std::ostringstream mask;
        mask << "node,split\n";
        for (int i = 0; i < n; ++i) {
            const double u = srng.next_unit();
            const char* tag = u < splits[0]                           ? "train"
                              : u < splits[0] + splits[1]             ? "val"
                              : u < splits[0] + splits[1] + splits[2] ? "test"
                                                                      : "none";
            mask << i << "," << tag << "\n";
        }
        ctx.write_output("masks.csv", mask.str());
        meta["feature_noise_sigma"] = feature_noise;
        meta["splits"] = splits;
    }

    ctx.write_output("meta.json", meta.dump(2) + "\n");
    ctx.finalize(p.seed, meta);
    return 0;
}

int cmd_centrality(RunContext& ctx, const GraphOptions& gopts, const CentralityOptions& copts,
                   const std::string& out_dir) {
    ctx.set_output_dir(out_dir);
    LoadedGraph lg = load_graph(gopts, ctx);
    CentralityVector c = copts.compute(lg.graph);
    ctx.write_output("centrality.csv", to_node_value_csv(c.values, "value"));
    maybe_write_node_map(lg, ctx);
    json sidecar = copts.to_json();
    sidecar["nodes"] = lg.graph.node_count();
    sidecar["largest_component_applied"] = !lg.new_to_old.empty();
    ctx.write_output("centrality.json", sidecar.dump(2) + "\n");
    ctx.finalize(0, sidecar);
    return 0;
}

int cmd_spectrum(RunContext& ctx, const GraphOptions& gopts, const CentralityOptions& copts,
                 double zero_tol, int dense_limit, const std::string& out_dir) {
    ctx.set_output_dir(out_dir);
    LoadedGraph lg = load_graph(gopts, ctx);
    auto diag = build_diagonal(copts.compute(lg.graph));
    SpectralReport rep = spectral_report(lg.graph, diag, zero_tol, dense_limit);

    json j;
    j["eigenvalues"] = rep.eigenvalues;
    j["analytic_mean"] = rep.analytic_mean;
    j["analytic_std"] = rep.analytic_std;
    j["mean_reciprocal_centrality"] = rep.mean_reciprocal_centrality;
    j["gamma"] = rep.gamma;
    j["gershgorin_bound"] = rep.gershgorin_bound;
    j["spectral_radius"] = rep.spectral_radius;
    j["spectral_gap_lambda1"] = rep.spectral_gap_lambda1;
    j["zero_tolerance"] = rep.zero_tolerance;
    j["connected"] = rep.connected;
    j["centrality"] = copts.to_json();
    ctx.write_output("spectrum.json", j.dump(2) + "\n");
    maybe_write_node_map(lg, ctx);
    ctx.finalize(0, copts.to_json());
    return 0;
}

int cmd_cheeger(RunContext& ctx, const GraphOptions& gopts, const CentralityOptions& copts,
                const std::string& out_dir) {
    ctx.set_output_dir(out_dir);
    LoadedGraph lg = load_graph(gopts, ctx);
    auto diag = build_diagonal(copts.compute(lg.graph));
    CheegerReport rep = cheeger_bruteforce(lg.graph, diag);

    json j;
    j["h_vertex"] = rep.h_vertex;
    j["h_edge"] = rep.h_edge;
    j["argmin_vertex"] = rep.argmin_vertex;
    j["argmin_edge"] = rep.argmin_edge;
    j["bound_rhs_vertex"] = rep.bound_rhs_vertex;
    j["bound_rhs_edge"] = rep.bound_rhs_edge;
    j["lambda1"] = rep.lambda1;
    j["holds_vertex"] = rep.holds_vertex;
    j["holds_edge"] = rep.holds_edge;
    j["centrality"] = copts.to_json();
    ctx.write_output("cheeger.json", j.dump(2) + "\n");
    maybe_write_node_map(lg, ctx);
    ctx.finalize(0, copts.to_json());
    return 0;
}

int cmd_cluster(RunContext& ctx, const GraphOptions& gopts, const CentralityOptions& copts,
                double e2, double e3, int clusters, int repeats, bool by_modulus,
                const std::string& truth_path, std::uint64_t seed, int dense_limit,
                const std::string& out_dir) {
    ctx.set_output_dir(out_dir);
    LoadedGraph lg = load_graph(gopts, ctx);
    auto diag = build_diagonal(copts.compute(lg.graph));

    std::optional<Partition> truth;
    if (!truth_path.empty()) {
        truth = load_truth(truth_path, lg, ctx);
        if (clusters == 0) clusters = truth->k;
    }
    if (clusters <= 0) throw std::runtime_error("--C is required when no truth labels are given");

    DenseMatrix rows =
        spectral_embedding(lg.graph, diag, e2, e3, clusters, by_modulus, dense_limit);
    std::vector<double> amis, aris;
    Partition first;
    for (int rep = 0; rep < repeats; ++rep) {
        Partition part = kmeans(rows, clusters, split_seed(seed, 0xc1, rep));
        if (rep == 0) first = part;
        if (truth) {
            amis.push_back(ami(part, *truth));
            aris.push_back(ari(part, *truth));
        }
    }

    json j{{"e2", e2},
           {"e3", e3},
           {"C", clusters},
           {"repeats", repeats},
           {"seed", seed},
           {"by_modulus", by_modulus},
           {"centrality", copts.to_json()},
           {"kmeans",
            {{"n_init", KMeansConfig{}.n_init}, {"max_iter", KMeansConfig{}.max_iter}}}};
    if (truth) {
        auto stats = [](const std::vector<double>& v) {
            double mean = 0.0;
            for (double x : v) mean += x;
            mean /= static_cast<double>(v.size());
            double var = 0.0;
            for (double x : v) var += (x - mean) * (x - mean);
            return std::pair<double, double>(mean, std::sqrt(var / static_cast<double>(v.size())));
        };
        auto [am, as] = stats(amis);
        auto [rm, rs] = stats(aris);
        j["ami_mean"] = am;
        j["ami_std"] = as;
        j["ari_mean"] = rm;
        j["ari_std"] = rs;
    }
    ctx.write_output("cluster.json", j.dump(2) + "\n");
    ctx.write_output("assignments.csv", labels_csv(first.labels, "cluster"));
    maybe_write_node_map(lg, ctx);
    ctx.finalize(seed, j);
    return 0;
}

int cmd_heatmap(RunContext& ctx, const GraphOptions& gopts, const CentralityOptions& copts,
                const std::string& truth_path, std::pair<double, double> e2_range,
                std::pair<double, double> e3_range, int steps, int repeats, std::uint64_t seed,
                int dense_limit, const std::string& out_dir) {
    ctx.set_output_dir(out_dir);
    LoadedGraph lg = load_graph(gopts, ctx);
    auto diag = build_diagonal(copts.compute(lg.graph));
    Partition truth = load_truth(truth_path, lg, ctx);

    HeatmapGrid grid =
        heatmap(lg.graph, diag, truth, e2_range, e3_range, steps, repeats, seed, dense_limit);

    // First row carries the e3 values, first column the e2 values.
    auto grid_csv = [&](const std::vector<std::vector<double>>& cells) {
        std::ostringstream csv;
        for (double e3v : grid.e3_values) csv << "," << format_double(e3v);
        csv << "\n";
        for (std::size_t i = 0; i < grid.e2_values.size(); ++i) {
            csv << format_double(grid.e2_values[i]);
            for (double v : cells[i]) csv << "," << format_double(v);
            csv << "\n";
        }
        return csv.str();
    };
    ctx.write_output("heatmap_ami.csv", grid_csv(grid.ami_mean));
    ctx.write_output("heatmap_ari.csv", grid_csv(grid.ari_mean));

    json j{{"e2_values", grid.e2_values},
           {"e3_values", grid.e3_values},
           {"ami_mean", grid.ami_mean},
           {"ami_std", grid.ami_std},
           {"ari_mean", grid.ari_mean},
           {"ari_std", grid.ari_std},
           {"repeats", grid.repeats},
           {"seed", grid.seed},
           {"C", truth.k},
           {"centrality", copts.to_json()},
           {"kmeans",
            {{"n_init", KMeansConfig{}.n_init}, {"max_iter", KMeansConfig{}.max_iter}}}};
    ctx.write_output("heatmap.json", j.dump(2) + "\n");
    maybe_write_node_map(lg, ctx);
    ctx.finalize(seed, j);
    return 0;
}

int cmd_train(RunContext& ctx, const GraphOptions& gopts, const std::string& centrality_list,
              int walk_length, double damping, const std::string& gso_spec, int epochs,
              int hidden, double dropout, std::uint64_t seed, const std::string& model_kind,
              int k_hops, bool frozen, bool dirichlet_probe, const std::string& features_path,
              const std::string& labels_path, const std::string& masks_path,
              const std::string& out_dir) {
    ctx.set_output_dir(out_dir);
    GraphOptions whole = gopts;
    whole.whole_graph = true; // features and masks are indexed by file node ids
    LoadedGraph lg = load_graph(whole, ctx);
    const Graph& g = lg.graph;
    const int n = g.node_count();

    DenseMatrix x = read_features_csv(ctx.read_input(features_path));
    if (x.rows != n) throw std::runtime_error("features row count does not match the graph");
    std::vector<int> labels = read_node_int_csv(ctx.read_input(labels_path), n);
    DataSplit split;
    split.split = read_mask_csv(ctx.read_input(masks_path), n);

    int classes = 0;
    for (int l : labels) classes = std::max(classes, l + 1);

    CgsoParams init = resolve_gso(gso_spec, ctx);
    std::vector<OperatorTermSpec> terms;
    std::stringstream ss(centrality_list);
    std::string kind_name;
    while (std::getline(ss, kind_name, ',')) {
        CentralityOptions copts;
        copts.kind = kind_name;
        copts.walk_length = walk_length;
        copts.damping = damping;
        terms.push_back({build_diagonal(copts.compute(g)), init});
    }
    if (terms.empty()) throw std::runtime_error("--centrality must name at least one kind");

    TrainConfig cfg;
    cfg.epochs = epochs;
    cfg.seed = seed;
    cfg.optim.learn_cgso = !frozen;

    TrainReport rep;
    if (model_kind == "cgcn") {
        CgcnModel model = make_cgcn({x.cols, hidden, classes}, std::move(terms), dropout, seed);
        rep = train_cgcn(model, g, x, labels, split, cfg, dirichlet_probe);
    } else if (model_kind == "csgc") {
        SgcModel model = make_sgc(x.cols, classes, std::move(terms), k_hops, seed);
        rep = train_sgc(model, g, x, labels, split, cfg);
    } else {
        throw std::runtime_error("--model must be cgcn or csgc");
    }

    json j{{"model", model_kind},
           {"centralities", centrality_list},
           {"init", gso_spec},
           {"epochs", epochs},
           {"hidden", hidden},
           {"dropout", dropout},
           {"seed", seed},
           {"frozen_cgso", frozen},
           {"learning_rates",
            {{"weights", cfg.optim.lr_weights}, {"exponents", cfg.optim.lr_exponents}}},
           {"weight_decay", cfg.optim.weight_decay},
           {"train_loss", rep.train_loss},
           {"val_accuracy", rep.val_accuracy},
           {"best_epoch", rep.best_epoch},
           {"best_val_accuracy", rep.best_val_accuracy},
           {"test_accuracy", rep.test_accuracy},
           {"diverged", rep.diverged}};
    if (!rep.error.empty()) j["error"] = rep.error;
    json learned = json::array();
    for (const auto& p : rep.learned_params) learned.push_back(params_to_json(p));
    j["learned_params"] = learned;
    if (!rep.dirichlet_energies.empty()) j["dirichlet_energies"] = rep.dirichlet_energies;
    if (model_kind == "csgc") j["k_hops"] = k_hops;

    ctx.write_output("train_report.json", j.dump(2) + "\n");
    ctx.finalize(seed, j);
    return rep.diverged ? 2 : 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
    auto results = run_suite(suite, seed);
    bool all_pass = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << " - " << r.detail << "\n";
        all_pass = all_pass && r.pass;
    }
    std::cout << (all_pass ? "verify: all checks passed\n" : "verify: FAILURES\n");
    return all_pass ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Centrality graph shift operators: spectra, clustering, and learnable "
                 "message passing"};
    app.require_subcommand(1);

    RunContext ctx(argc, argv);
    int dense_limit = default_dense_limit();
    app.add_option("--dense-limit", dense_limit,
                   "node cap for dense eigendecompositions (env CGSO_DENSE_LIMIT)");

    auto* generate = app.add_subcommand("generate", "sample synthetic graphs");
    generate->require_subcommand(1);

    auto* gen_ba = generate->add_subcommand("ba", "preferential-attachment graph");
    BaParams ba;
    std::string out_dir;
    gen_ba->add_option("--n", ba.n, "node count")->required();
    gen_ba->add_option("--n0", ba.n0, "seed-graph node count")->default_val(5);
    gen_ba->add_option("--r0", ba.r0, "seed-graph edge count")->default_val(4);
    gen_ba->add_option("--r", ba.r, "edges per arriving node")->default_val(2);
    gen_ba->add_option("--seed", ba.seed, "rng seed")->default_val(0);
    gen_ba->add_option("-o,--out", out_dir, "output directory")->required();

    auto* gen_sbbam = generate->add_subcommand("sbbam", "block model with scale-free blocks");
    std::string blocks_arg, r_arg, n0_arg, r0_arg;
    double inter_p = 0.1;
    std::uint64_t sbbam_seed = 0;
    double feature_noise = -1.0;
    std::string splits_arg = "0.6,0.2,0.2";
    gen_sbbam->add_option("--blocks", blocks_arg, "comma-separated block sizes")->required();
    gen_sbbam->add_option("--r", r_arg, "comma-separated per-block attachment counts")
        ->required();
    gen_sbbam->add_option("--p", inter_p, "cross-block edge probability")->default_val(0.1);
    gen_sbbam->add_option("--n0", n0_arg, "optional per-block seed sizes");
    gen_sbbam->add_option("--r0", r0_arg, "optional per-block seed edge counts");
    gen_sbbam->add_option("--seed", sbbam_seed, "rng seed")->default_val(0);
    gen_sbbam->add_option("--features", feature_noise,
                          "also emit block one-hot features with this noise sigma");
    gen_sbbam->add_option("--splits", splits_arg, "train,val,test fractions for masks.csv");
    gen_sbbam->add_option("-o,--out", out_dir, "output directory")->required();

    auto* centrality_cmd = app.add_subcommand("centrality", "per-node centrality values");
    GraphOptions cent_gopts;
    CentralityOptions cent_copts;
    cent_gopts.attach(centrality_cmd);
    cent_copts.attach(centrality_cmd);
    centrality_cmd->add_option("-o,--out", out_dir, "output directory")->required();

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Markov-operator spectral report");
    GraphOptions spec_gopts;
    CentralityOptions spec_copts;
    double zero_tol = -1.0;
    spec_gopts.attach(spectrum_cmd);
    spec_copts.attach(spectrum_cmd);
    spectrum_cmd->add_option("--zero-tol", zero_tol,
                             "zero threshold for the spectral gap (negative = auto)");
    spectrum_cmd->add_option("-o,--out", out_dir, "output directory")->required();

    auto* cheeger_cmd = app.add_subcommand("cheeger", "exhaustive expansion constant (n <= 16)");
    GraphOptions ch_gopts;
    CentralityOptions ch_copts;
    ch_gopts.attach(cheeger_cmd);
    ch_copts.attach(cheeger_cmd);
    cheeger_cmd->add_option("-o,--out", out_dir, "output directory")->required();

    auto* cluster_cmd = app.add_subcommand("cluster", "spectral clustering with a chosen CGSO");
    GraphOptions cl_gopts;
    CentralityOptions cl_copts;
    double e2 = -1.0, e3 = 0.0;
    int clusters = 0, repeats = 1;
    bool by_modulus = false;
    std::string truth_path;
    std::uint64_t cluster_seed = 0;
    cl_gopts.attach(cluster_cmd);
    cl_copts.attach(cluster_cmd);
    cluster_cmd->add_option("--e2", e2, "left exponent")->default_val(-1.0);
    cluster_cmd->add_option("--e3", e3, "right exponent")->default_val(0.0);
    cluster_cmd->add_option("--C", clusters, "cluster count (defaults to truth's)");
    cluster_cmd->add_option("--repeats", repeats, "k-means repeats with split seeds")
        ->default_val(1);
    cluster_cmd->add_flag("--by-modulus", by_modulus,
                          "select eigenvectors by |lambda| instead of algebraic value");
    cluster_cmd->add_option("--truth", truth_path, "labels.csv for AMI/ARI scoring");
    cluster_cmd->add_option("--seed", cluster_seed, "rng seed")->default_val(0);
    cluster_cmd->add_option("-o,--out", out_dir, "output directory")->required();

    auto* heatmap_cmd = app.add_subcommand("heatmap", "AMI/ARI over an (e2, e3) grid");
    GraphOptions hm_gopts;
    CentralityOptions hm_copts;
    std::string hm_truth;
    std::string e2_range_arg = "-1.5,1.5", e3_range_arg = "-1.5,1.5";
    int steps = 7, hm_repeats = 3;
    std::uint64_t hm_seed = 0;
    hm_gopts.attach(heatmap_cmd);
    hm_copts.attach(heatmap_cmd);
    heatmap_cmd->add_option("--truth", hm_truth, "labels.csv with ground truth")->required();
    heatmap_cmd->add_option("--e2-range", e2_range_arg, "lo,hi");
    heatmap_cmd->add_option("--e3-range", e3_range_arg, "lo,hi");
    heatmap_cmd->add_option("--steps", steps, "grid resolution per axis")->default_val(7);
    heatmap_cmd->add_option("--repeats", hm_repeats, "k-means repeats per cell")->default_val(3);
    heatmap_cmd->add_option("--seed", hm_seed, "rng seed")->default_val(0);
    heatmap_cmd->add_option("-o,--out", out_dir, "output directory")->required();

    auto* train_cmd = app.add_subcommand("train", "fit a CGCN or CSGC with a learnable operator");
    GraphOptions tr_gopts;
    std::string centrality_list = "degree", gso_spec = "preset:mean_aggregation";
    std::string features_path, labels_path, masks_path;
    int epochs = 200, hidden = 64, walk_length = 2, k_hops = 2;
    double dropout = 0.5, damping = 0.85;
    std::string model_kind = "cgcn";
    bool frozen = false, dirichlet_probe = false;
    std::uint64_t train_seed = 0;
    tr_gopts.attach(train_cmd);
    train_cmd->add_option("--centrality", centrality_list,
                          "one kind, or two comma-separated kinds for a combined operator");
    train_cmd->add_option("--gso", gso_spec, "preset:NAME or params:FILE initialization");
    train_cmd->add_option("--features", features_path, "features csv (node-major rows)")
        ->required();
    train_cmd->add_option("--labels", labels_path, "labels csv (node,label)")->required();
    train_cmd->add_option("--masks", masks_path, "masks csv (node,split)")->required();
    train_cmd->add_option("--epochs", epochs)->default_val(200);
    train_cmd->add_option("--hidden", hidden)->default_val(64);
    train_cmd->add_option("--dropout", dropout)->default_val(0.5);
    train_cmd->add_option("--walk-length", walk_length)->default_val(2);
    train_cmd->add_option("--damping", damping)->default_val(0.85);
    train_cmd->add_option("--model", model_kind, "cgcn|csgc")->default_val("cgcn");
    train_cmd->add_option("--k-hops", k_hops, "propagation steps for csgc")->default_val(2);
    train_cmd->add_flag("--frozen", frozen, "keep the operator scalars fixed");
    train_cmd->add_flag("--dirichlet-probe", dirichlet_probe,
                        "record per-layer Dirichlet energies");
    train_cmd->add_option("--seed", train_seed, "rng seed")->default_val(0);
    train_cmd->add_option("-o,--out", out_dir, "output directory")->required();

    auto* verify_cmd = app.add_subcommand("verify", "run the invariant suites");
    std::string suite = "all";
    std::uint64_t verify_seed = 0;
    verify_cmd->add_option("--suite", suite,
                           "graph|spectral|cheeger|generators|clustering|gradients|all");
    verify_cmd->add_option("--seed", verify_seed, "rng seed")->default_val(0);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1; // usage error
    }

    try {
        if (gen_ba->parsed()) return cmd_generate_ba(ctx, ba, out_dir);
        if (gen_sbbam->parsed()) {
            SbbamParams p;
            p.block_sizes = parse_int_list(blocks_arg);
            for (int r : parse_int_list(r_arg)) p.r_per_block.push_back(r);
            const std::size_t k = p.block_sizes.size();
            p.inter_p.assign(k, std::vector<double>(k, inter_p));
            for (std::size_t i = 0; i < k; ++i) p.inter_p[i][i] = 0.0;
            if (!n0_arg.empty()) p.n0_per_block = parse_int_list(n0_arg);
            if (!r0_arg.empty())
                for (int v : parse_int_list(r0_arg)) p.r0_per_block.push_back(v);
            p.seed = sbbam_seed;
            return cmd_generate_sbbam(ctx, p, feature_noise, parse_double_list(splits_arg),
                                      out_dir);
        }
        if (centrality_cmd->parsed())
            return cmd_centrality(ctx, cent_gopts, cent_copts, out_dir);
        if (spectrum_cmd->parsed())
            return cmd_spectrum(ctx, spec_gopts, spec_copts, zero_tol, dense_limit, out_dir);
        if (cheeger_cmd->parsed()) return cmd_cheeger(ctx, ch_gopts, ch_copts, out_dir);
        if (cluster_cmd->parsed())
            return cmd_cluster(ctx, cl_gopts, cl_copts, e2, e3, clusters, repeats, by_modulus,
                               truth_path, cluster_seed, dense_limit, out_dir);
        if (heatmap_cmd->parsed()) {
            auto e2r = parse_double_list(e2_range_arg);
            auto e3r = parse_double_list(e3_range_arg);
            if (e2r.size() != 2 || e3r.size() != 2)
                throw std::runtime_error("--e2-range/--e3-range expect lo,hi");
            return cmd_heatmap(ctx, hm_gopts, hm_copts, hm_truth, {e2r[0], e2r[1]},
                               {e3r[0], e3r[1]}, steps, hm_repeats, hm_seed, dense_limit,
                               out_dir);
        }
        if (train_cmd->parsed())
            return cmd_train(ctx, tr_gopts, centrality_list, walk_length, damping, gso_spec,
                             epochs, hidden, dropout, train_seed, model_kind, k_hops, frozen,
                             dirichlet_probe, features_path, labels_path, masks_path, out_dir);
        if (verify_cmd->parsed()) return cmd_verify(suite, verify_seed);
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
    return 1;
}
