#pragma once

#include <optional>
#include <span>

#include "qas/mcts.hpp"
#include "qas/trainer.hpp"

namespace qas {

// Pearson correlation; nullopt when either column is (numerically) constant.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

struct CorrelateConfig {
    int num_circuits = 30;
    int gates_min = 10;
    int gates_max = 60;
    int train_iters = 100;
    double learning_rate = 0.005;
    std::vector<std::pair<GateKind, double>> gate_probs = {{GateKind::U3, 0.5},
                                                           {GateKind::CU3, 0.5}};
    TopologyConstraint topology = TopologyConstraint::full();
    std::uint64_t seed = 0;
    AmesConfig ames;  // loss kind doubles as the training loss
};

struct CorrelationRow {
    int index = 0;
    int gates = 0;
    int param_count = 0;
    double ames = 0.0;
    double lambda_min = 0.0;
    double train_loss = 0.0;
    double test_loss = 0.0;
};

struct CorrelationResult {
    std::vector<CorrelationRow> rows;
    std::optional<double> pearson_train;  // corr(AMES, final train loss)
    std::optional<double> pearson_test;
};

// Scores and briefly trains num_circuits uniformly random architectures with
// gate counts in [gates_min, gates_max]; the study behind the surrogate's
// sanity check. Sentinel-scored (parameterless) draws are redrawn.
CorrelationResult run_correlation_study(const Dataset& dataset, const CorrelateConfig& config);

void write_correlation_csv(const std::string& path, const CorrelationResult& result);

}  // namespace qas
