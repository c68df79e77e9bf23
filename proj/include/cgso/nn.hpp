#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cgso/centrality.hpp"
#include "cgso/dense.hpp"
#include "cgso/graph.hpp"
#include "cgso/operators.hpp"

namespace cgso {

// Raised when a forward pass produces a non-finite activation; the training
// loop converts it into a diverged report instead of crashing the run.
struct NonFiniteError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One learnable shift-operator term: Phi(A, V) with its seven scalars live
// during training. A model holds one term, or two in combined
// local-plus-global mode.
struct OperatorTermSpec {
    DiagonalCentrality diag;
    CgsoParams params;
};

struct CgcnModel {
    std::vector<int> layer_dims;      // d0..dL
    std::vector<DenseMatrix> weights; // weights[l] is d_l x d_{l+1}
    std::vector<OperatorTermSpec> terms;
    double dropout_p = 0.5;

    int layer_count() const { return static_cast<int>(weights.size()); }
};

// Glorot-uniform weight init; all randomness comes from the seed.
CgcnModel make_cgcn(std::vector<int> layer_dims, std::vector<OperatorTermSpec> terms,
                    double dropout_p, std::uint64_t seed);

struct ForwardCache {
    std::vector<DenseMatrix> dropped;  // layer inputs after dropout
    std::vector<DenseMatrix> messages; // Phi * dropped
    std::vector<DenseMatrix> preact;   // messages * W
    std::vector<std::vector<char>> keep_masks;
};

// Per layer: dropout in train mode, message passing through the summed
// operator terms, linear map, ReLU except on the final layer. Dropout masks
// depend only on (dropout_seed, layer), so a forward pass is a
// deterministic function of parameters and seed.
DenseMatrix cgcn_forward(const CgcnModel& model, const Graph& g, const DenseMatrix& x,
                         bool train_mode, std::uint64_t dropout_seed,
                         ForwardCache* cache = nullptr);

struct Gradients {
    std::vector<DenseMatrix> weights;
    std::vector<CgsoParams> cgso; // per term
};

// Masked mean softmax cross-entropy and reverse-mode gradients for every
// weight entry and every operator scalar. The operator-scalar gradients are
// contracted against the upstream gradient without materializing any dense
// n x n matrix.
double cgcn_loss_and_grads(const CgcnModel& model, const Graph& g, const DenseMatrix& x,
                           const std::vector<int>& labels, const std::vector<int>& mask,
                           std::uint64_t dropout_seed, bool train_mode, Gradients& grads);

double cgcn_loss(const CgcnModel& model, const Graph& g, const DenseMatrix& x,
                 const std::vector<int>& labels, const std::vector<int>& mask,
                 std::uint64_t dropout_seed, bool train_mode);

double accuracy(const DenseMatrix& logits, const std::vector<int>& labels,
                const std::vector<int>& mask);

struct OptimConfig {
    double lr_weights = 0.01;
    double lr_exponents = 0.005; // e1, e2, e3 group
    double weight_decay = 5e-4;  // applied as an L2 gradient addition to all parameters
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    bool learn_cgso = true;
};

struct AdamState {
    std::vector<DenseMatrix> w_m, w_v;
    std::vector<CgsoParams> p_m, p_v;
    long long t = 0;
};

AdamState make_adam_state(const CgcnModel& model);
void adam_step(CgcnModel& model, const Gradients& grads, AdamState& state,
               const OptimConfig& cfg);

struct TrainConfig {
    int epochs = 200;
    OptimConfig optim;
    std::uint64_t seed = 0;
};

struct TrainReport {
    std::vector<double> train_loss;
    std::vector<double> val_accuracy;
    double test_accuracy = 0.0;
    double best_val_accuracy = 0.0;
    int best_epoch = -1; // ties resolve to the earliest epoch
    std::vector<CgsoParams> learned_params;
    std::vector<double> dirichlet_energies; // per layer of the final model, eval mode
    bool diverged = false;
    std::string error;
};

// split[i]: 0 = train, 1 = val, 2 = test; anything else is ignored.
struct DataSplit {
    std::vector<int> split;
    std::vector<int> nodes_with(int tag) const;
};

TrainReport train_cgcn(CgcnModel& model, const Graph& g, const DenseMatrix& x,
                       const std::vector<int>& labels, const DataSplit& split,
                       const TrainConfig& cfg, bool dirichlet_probe = false);

// Simple graph convolution: K repeated operator applies, then one linear
// map.
struct SgcModel {
    std::vector<OperatorTermSpec> terms;
    int k_hops = 2;
    DenseMatrix weight; // d0 x classes
};

SgcModel make_sgc(int in_dim, int out_dim, std::vector<OperatorTermSpec> terms, int k_hops,
                  std::uint64_t seed);

DenseMatrix sgc_forward(const SgcModel& model, const Graph& g, const DenseMatrix& x);

double sgc_loss_and_grads(const SgcModel& model, const Graph& g, const DenseMatrix& x,
                          const std::vector<int>& labels, const std::vector<int>& mask,
                          Gradients& grads);

TrainReport train_sgc(SgcModel& model, const Graph& g, const DenseMatrix& x,
                      const std::vector<int>& labels, const DataSplit& split,
                      const TrainConfig& cfg);

// (1/n) sum over unordered edges of || h_i / sqrt(1 + deg i) -
// h_j / sqrt(1 + deg j) ||^2; a smoothness probe for oversmoothing studies.
double dirichlet_energy(const Graph& g, const DenseMatrix& h);

// Mutable views of every parameter (weights first, then the per-term seven
// scalars); finite-difference checks perturb these directly.
std::vector<double*> parameter_pointers(CgcnModel& model, bool include_cgso = true);
std::vector<double*> parameter_pointers(SgcModel& model, bool include_cgso = true);

} // namespace cgso
