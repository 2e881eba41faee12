#include "qas/mcts.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qas {

void SearchConfig::validate() const {
    if (max_evaluations < 1) throw std::invalid_argument("search: FE must be >= 1");
    if (!(widening_alpha > 0.0 && widening_alpha <= 1.0))
        throw std::invalid_argument("search: alpha must be in (0, 1]");
    if (max_depth < 1) throw std::invalid_argument("search: max depth must be >= 1");
    if (batch_children < 1) throw std::invalid_argument("search: batch size must be >= 1");
    if (max_gates_per_expansion < 1)
        throw std::invalid_argument("search: expansion gate cap must be >= 1");
    if (beta0 < 0.0) throw std::invalid_argument("search: beta0 must be >= 0");
    if (gate_probs.empty()) throw std::invalid_argument("search: empty gate set");
    double total = 0.0;
    for (const auto& [kind, prob] : gate_probs) {
        if (prob < 0.0) throw std::invalid_argument("search: negative gate probability");
        total += prob;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("search: gate probabilities must sum to 1");
}

double uct(const SearchNode& child, const SearchNode& parent, double q_min, double q_max,
           double beta) {
    if (child.visits < 1) throw std::invalid_argument("uct: child has no visits");
    double exploit;
    if (!std::isfinite(child.quality)) {
        exploit = 0.0;
    } else if (q_max > q_min) {
        exploit = (child.quality - q_min) / (q_max - q_min);
    } else {
        exploit = 0.5;
    }
    double explore = beta * std::sqrt(std::log(static_cast<double>(parent.visits) + 1.0) /
                                      static_cast<double>(child.visits));
    return exploit + explore;
}

double beta_schedule(double beta0, long long max_evaluations, long long evaluations_done) {
    if (max_evaluations < 1) throw std::invalid_argument("beta_schedule: FE must be >= 1");
    if (evaluations_done < 0 || evaluations_done > max_evaluations)
        throw std::invalid_argument("beta_schedule: fe out of range");
    return beta0 * static_cast<double>(max_evaluations - evaluations_done) /
           static_cast<double>(max_evaluations);
}

namespace {

double current_beta(const SearchContext& ctx) {
    long long fe = std::min(ctx.fe, ctx.config->max_evaluations);
    return beta_schedule(ctx.config->beta0, ctx.config->max_evaluations, fe);
}

GateKind sample_gate_kind(const SearchConfig& config, Rng& rng) {
    double u = rng.uniform01();
    double acc = 0.0;
    for (const auto& [kind, prob] : config.gate_probs) {
        acc += prob;
        if (u < acc) return kind;
    }
    return config.gate_probs.back().first;
}

// Draws one gate (kind by config probabilities, placement uniform over the
// allowed wires) and appends it with fresh parameter slots. Two-qubit kinds
// with no allowed pair are redrawn a bounded number of times, then dropped.
bool append_sampled_gate(CircuitArchitecture& arch, const SearchConfig& config, Rng& rng) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        GateKind kind = sample_gate_kind(config, rng);
        if (!gate_is_two_qubit(kind)) {
            int q = static_cast<int>(rng.uniform_int(0, arch.num_qubits - 1));
            arch.append(kind, q);
            return true;
        }
        auto pairs = config.topology.allowed_pairs(arch.num_qubits);
        if (pairs.empty()) continue;
        auto [a, b] = pairs[static_cast<std::size_t>(rng.uniform_int(0, static_cast<long long>(pairs.size()) - 1))];
        if (rng.uniform_int(0, 1) == 1) std::swap(a, b);  // orientation for directed gates
        arch.append(kind, a, b);
        return true;
    }
    return false;
}

SearchNode* make_child(SearchNode* parent, CircuitArchitecture arch) {
    auto child = std::make_unique<SearchNode>();
    child->arch = std::move(arch);
    child->depth = parent->depth + 1;
    child->parent = parent;
    parent->children.push_back(std::move(child));
    return parent->children.back().get();
}

void simulate_one(SearchContext& ctx, SearchNode* child) {
    AmesScore score;
    try {
        score = ctx.scorer(child->arch);
    } catch (const std::exception&) {
        score.value = std::numeric_limits<double>::infinity();
        score.param_count = child->arch.param_count;
    }
    child->score = score;
    child->scored = true;
    child->visits = 1;
    child->quality = std::isfinite(score.value) ? -score.value
                                                : -std::numeric_limits<double>::infinity();
    ctx.fe += 1;
    if (std::isfinite(child->quality)) {
        ctx.q_min = std::min(ctx.q_min, child->quality);
        ctx.q_max = std::max(ctx.q_max, child->quality);
    }
    if (!ctx.have_best || score.value < ctx.best_score.value) {
        ctx.have_best = true;
        ctx.best_arch = child->arch;
        ctx.best_score = score;
    }
    ctx.trace.push_back({ctx.fe, score.value, score.lambda_min, score.param_count, child->depth,
                         child->arch.gate_count(), current_beta(ctx)});
}

}  // namespace

SearchNode* select(SearchContext& ctx, SearchNode* root) {
    SearchNode* node = root;
    while (!node->is_leaf() && node->depth < ctx.config->max_depth) {
        double beta = current_beta(ctx);
        SearchNode* best = nullptr;
        double best_uct = -std::numeric_limits<double>::infinity();
        for (const auto& child : node->children) {
            double u = uct(*child, *node, ctx.q_min, ctx.q_max, beta);
            if (best == nullptr || u > best_uct) {  // strict >: ties keep the lowest index
                best = child.get();
                best_uct = u;
            }
        }
        node = best;
        if (!node->is_leaf()) progressive_widen(ctx, node);
    }
    return node;
}

std::vector<SearchNode*> expand(SearchNode* node, const SearchConfig& config, Rng& rng) {
    if (node->depth >= config.max_depth)
        throw std::invalid_argument("expand: node is at the depth cap");
    std::vector<SearchNode*> children;
    children.reserve(config.batch_children);
    for (int b = 0; b < config.batch_children; ++b) {
        long long h = rng.uniform_int(1, config.max_gates_per_expansion);
        CircuitArchitecture arch = node->arch;
        for (long long g = 0; g < h; ++g) append_sampled_gate(arch, config, rng);
        children.push_back(make_child(node, std::move(arch)));
    }
    return children;
}

void simulate(SearchContext& ctx, std::span<SearchNode* const> children) {
    for (SearchNode* child : children) simulate_one(ctx, child);
}

void backpropagate(SearchNode* leaf) {
    for (SearchNode* node = leaf->parent; node != nullptr; node = node->parent) {
        double q = -std::numeric_limits<double>::infinity();
        long long n = 0;
        for (const auto& child : node->children) {
            q = std::max(q, child->quality);
            n += child->visits;
        }
        node->quality = q;
        node->visits = n;
    }
}

SearchNode* progressive_widen(SearchContext& ctx, SearchNode* node) {
    if (node->is_leaf()) return nullptr;
    if (ctx.fe >= ctx.config->max_evaluations) return nullptr;  // budget guard
    double threshold = std::floor(std::pow(static_cast<double>(node->visits),
                                           ctx.config->widening_alpha));
    double population = static_cast<double>(node->children.size());
    bool fires = ctx.config->widen_strict ? threshold > population : threshold >= population;
    if (!fires) return nullptr;

    CircuitArchitecture arch = node->arch;
    bool deleted = false;
    if (ctx.rng.uniform01() < 0.5 && !arch.gates.empty()) {
        long long k = ctx.rng.uniform_int(1, arch.gate_count());
        std::vector<std::size_t> doomed = ctx.rng.sample_without_replacement(
            arch.gates.size(), static_cast<std::size_t>(k));
        for (auto it = doomed.rbegin(); it != doomed.rend(); ++it)
            arch.gates.erase(arch.gates.begin() + static_cast<std::ptrdiff_t>(*it));
        arch.reindex_parameters();
        deleted = true;
    }
    if (!deleted) append_sampled_gate(arch, *ctx.config, ctx.rng);

    SearchNode* child = make_child(node, std::move(arch));
    simulate_one(ctx, child);
    backpropagate(child);
    return child;
}

namespace {

// Guaranteed-progress fallback for a selected leaf at the depth cap: append
// one sampled gate to its parent as a widening-style child.
void force_widen_add(SearchContext& ctx, SearchNode* node) {
    CircuitArchitecture arch = node->arch;
    append_sampled_gate(arch, *ctx.config, ctx.rng);
    SearchNode* child = make_child(node, std::move(arch));
    simulate_one(ctx, child);
    backpropagate(child);
}

void audit_rec(const SearchNode& node, const SearchConfig& config, TreeAudit& audit) {
    audit.node_count += 1;
    audit.max_depth_seen = std::max(audit.max_depth_seen, node.depth);
    if (node.depth > config.max_depth) audit.depth_ok = false;
    if (!respects_topology(node.arch, config.topology)) audit.topology_ok = false;
    if (!node.is_leaf()) {
        double q = -std::numeric_limits<double>::infinity();
        long long n = 0;
        for (const auto& child : node.children) {
            q = std::max(q, child->quality);
            n += child->visits;
            audit_rec(*child, config, audit);
        }
        if (node.quality != q) audit.quality_ok = false;
        if (node.visits != n) audit.visits_ok = false;
    }
}

}  // namespace

TreeAudit audit_tree(const SearchNode& root, const SearchConfig& config) {
    TreeAudit audit;
    audit_rec(root, config, audit);
    return audit;
}

SearchResult run_search(const Dataset& dataset, const SearchConfig& config) {
    config.validate();
    dataset.validate();
    int num_qubits = config.num_qubits > 0 ? config.num_qubits : dataset.num_qubits();
    if (num_qubits != dataset.num_qubits())
        throw std::invalid_argument("search: configured qubit count differs from the dataset's");

    SearchConfig cfg = config;
    cfg.num_qubits = num_qubits;
    if (cfg.ames.readout.class_groups.empty())
        throw std::invalid_argument("search: readout not configured");
    cfg.ames.readout.validate(num_qubits);

    AmesScorer scorer(dataset, cfg.ames);
    SearchContext ctx;
    ctx.config = &cfg;
    ctx.rng = Rng(derive_seed(cfg.rng_seed, "search"));
    ctx.scorer = [&scorer](const CircuitArchitecture& arch) { return scorer(arch); };

    auto root = std::make_unique<SearchNode>();
    root->arch = CircuitArchitecture::empty(num_qubits);
    root->depth = 0;

    while (ctx.fe < cfg.max_evaluations) {
        SearchNode* node = select(ctx, root.get());
        if (ctx.fe >= cfg.max_evaluations) break;
        if (node->depth >= cfg.max_depth) {
            // Leaf at the depth cap cannot expand; widen its parent instead so
            // fe keeps advancing and the loop always terminates.
            force_widen_add(ctx, node->parent != nullptr ? node->parent : root.get());
            continue;
        }
        std::vector<SearchNode*> children = expand(node, cfg, ctx.rng);
        simulate(ctx, children);
        backpropagate(children.front());
        if (cfg.debug_audit) {
            TreeAudit audit = audit_tree(*root, cfg);
            if (!audit.all_ok()) throw std::runtime_error("search: tree audit failed");
        }
    }

    SearchResult result;
    if (!ctx.have_best) throw std::runtime_error("search: no circuit was scored");
    result.best_arch = std::move(ctx.best_arch);
    result.best_score = ctx.best_score;
    result.trace = std::move(ctx.trace);
    result.evaluations = ctx.fe;
    result.root = std::move(root);
    return result;
}

CircuitArchitecture random_architecture(int num_qubits, int num_gates,
                                        std::span<const std::pair<GateKind, double>> gate_probs,
                                        const TopologyConstraint& topology, Rng& rng) {
    SearchConfig cfg;
    cfg.gate_probs.assign(gate_probs.begin(), gate_probs.end());
    cfg.topology = topology;
    CircuitArchitecture arch = CircuitArchitecture::empty(num_qubits);
    for (int g = 0; g < num_gates; ++g) append_sampled_gate(arch, cfg, rng);
    return arch;
}

}  // namespace qas
