#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <span>
#include <vector>

#include "qas/circuit.hpp"
#include "qas/datagen.hpp"
#include "qas/ntk.hpp"
#include "qas/rng.hpp"
#include "qas/topology.hpp"

namespace qas {

struct SearchNode {
    CircuitArchitecture arch;
    double quality = -std::numeric_limits<double>::infinity();  // Q = -AMES value
    long long visits = 0;                                       // N
    bool scored = false;
    AmesScore score;
    int depth = 0;
    SearchNode* parent = nullptr;
    std::vector<std::unique_ptr<SearchNode>> children;

    bool is_leaf() const { return children.empty(); }
};

struct SearchConfig {
    long long max_evaluations = 1000;  // FE
    double widening_alpha = 0.5;       // alpha
    double beta0 = 0.1;
    int max_depth = 16;                 // D
    int batch_children = 4;             // B
    int max_gates_per_expansion = 8;    // L: expansion draws H ~ U{1..L}
    std::vector<std::pair<GateKind, double>> gate_probs = {{GateKind::U3, 0.5},
                                                           {GateKind::CU3, 0.5}};
    TopologyConstraint topology = TopologyConstraint::full();
    std::uint64_t rng_seed = 0;
    int num_qubits = 0;        // 0: take the dataset's qubit count
    bool widen_strict = false; // use '>' instead of '>=' in the widening trigger
    bool debug_audit = false;  // full-tree consistency audit every iteration
    AmesConfig ames;

    void validate() const;  // throws std::invalid_argument on bad values
};

// One line per AMES evaluation, in evaluation order.
struct SearchTraceRow {
    long long fe = 0;
    double ames = 0.0;
    double lambda_min = 0.0;
    int param_count = 0;
    int depth = 0;
    int gates = 0;
    double beta = 0.0;  // schedule value at this evaluation count (clamped at FE)
};

struct SearchResult {
    CircuitArchitecture best_arch;
    AmesScore best_score;
    std::vector<SearchTraceRow> trace;
    long long evaluations = 0;  // total; in [FE, FE + B - 1]
    std::unique_ptr<SearchNode> root;
};

// Shared mutable state threaded through one search run.
struct SearchContext {
    const SearchConfig* config = nullptr;
    Rng rng{0};
    std::function<AmesScore(const CircuitArchitecture&)> scorer;
    long long fe = 0;
    // extremes over finite qualities encountered anywhere in the tree
    double q_min = std::numeric_limits<double>::infinity();
    double q_max = -std::numeric_limits<double>::infinity();
    std::vector<SearchTraceRow> trace;
    bool have_best = false;
    CircuitArchitecture best_arch;
    AmesScore best_score;
};

// Eq-9-style score: normalized exploitation plus beta-scaled exploration.
// q_max == q_min yields a neutral 0.5; non-finite child quality (sentinel
// scores) contributes 0 exploitation so such nodes stay traversable.
double uct(const SearchNode& child, const SearchNode& parent, double q_min, double q_max,
           double beta);

// beta0 * (FE - fe) / FE; throws if fe > FE.
double beta_schedule(double beta0, long long max_evaluations, long long evaluations_done);

// Descends from the root picking the max-UCT child (ties to the lowest child
// index), widening each internal node it moves through, until a leaf or the
// depth cap. May consume budget via widening simulations.
SearchNode* select(SearchContext& ctx, SearchNode* root);

// Appends B children, each extending node->arch with H ~ U{1..L} sampled
// gates (fresh parameter slots, topology-constrained placements).
std::vector<SearchNode*> expand(SearchNode* node, const SearchConfig& config, Rng& rng);

// Scores each child (Q = -AMES, N = 1), advances fe, updates extremes and
// the best-so-far; scorer failures mark the child with the worst sentinel.
void simulate(SearchContext& ctx, std::span<SearchNode* const> children);

// Re-establishes Q = max(children Q), N = sum(children N) on every ancestor.
void backpropagate(SearchNode* leaf);

// Widening rule floor(N^alpha) >= |children| (or strict >): adds one child
// built by deleting k ~ U{1..gates} gates from the node (falls back to the
// add branch on an empty circuit) or by appending one sampled gate, each with
// probability 1/2; the child is immediately simulated and backpropagated.
SearchNode* progressive_widen(SearchContext& ctx, SearchNode* node);

// Full loop: select -> expand -> simulate -> backpropagate until fe >= FE.
SearchResult run_search(const Dataset& dataset, const SearchConfig& config);

// Uniformly sampled circuit from the same gate alphabet/topology the search
// uses; the random-search baseline and the correlation study both draw these.
CircuitArchitecture random_architecture(int num_qubits, int num_gates,
                                        std::span<const std::pair<GateKind, double>> gate_probs,
                                        const TopologyConstraint& topology, Rng& rng);

// Post-run consistency audit (max/sum identities, depth bound, topology).
struct TreeAudit {
    bool quality_ok = true;  // every internal node: Q == max over children
    bool visits_ok = true;   // every internal node: N == sum over children
    bool depth_ok = true;
    bool topology_ok = true;
    int max_depth_seen = 0;
    long long node_count = 0;

    bool all_ok() const { return quality_ok && visits_ok && depth_ok && topology_ok; }
};

TreeAudit audit_tree(const SearchNode& root, const SearchConfig& config);

}  // namespace qas
