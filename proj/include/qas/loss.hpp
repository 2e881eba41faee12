#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qas/readout.hpp"
#include "qas/statevector.hpp"

namespace qas {

enum class LossKind { MSE, CE };

LossKind loss_kind_from_name(std::string_view name);  // "mse" | "ce"
std::string_view loss_kind_name(LossKind kind);

// Per-sample class scores: each input state is evolved through the circuit
// and read out; row m holds the pre-softmax scores of sample m.
std::vector<std::vector<double>> batch_scores(const CircuitArchitecture& arch,
                                              std::span<const double> params,
                                              std::span<const StateVector> states,
                                              const ReadoutSpec& readout);

// MSE: (1/2n) sum_m sum_c (score - onehot)^2.
// CE:  mean negative log softmax probability of the true class.
double loss_from_scores(const std::vector<std::vector<double>>& scores,
                        std::span<const int> labels, int num_classes, LossKind kind);

// Composition of the two above; shared by surrogate scoring and training.
double compute_loss(const CircuitArchitecture& arch, std::span<const double> params,
                    std::span<const StateVector> states, std::span<const int> labels,
                    const ReadoutSpec& readout, LossKind kind);

}  // namespace qas
