#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "qas/datagen.hpp"
#include "qas/loss.hpp"
#include "qas/readout.hpp"

namespace qas {

enum class GradientMode { parameter_shift, finite_difference };

GradientMode gradient_mode_from_name(std::string_view name);  // "shift" | "fd"
std::string_view gradient_mode_name(GradientMode mode);

struct TrainConfig {
    double learning_rate = 0.005;
    int epochs = 200;
    LossKind loss_kind = LossKind::MSE;
    std::size_t batch_size = 0;  // 0: full batch
    GradientMode gradient_mode = GradientMode::parameter_shift;
    double fd_step = 1e-4;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TrainResult {
    std::vector<double> final_params;
    std::vector<double> loss_curve;  // one entry per epoch
    double train_accuracy = 0.0;
    double test_accuracy = 0.0;
};

// Cosine schedule eta_t = eta * (1 + cos(pi t / T)) / 2; eta_0 = eta, eta_T = 0.
double cosine_lr(double eta, int t, int total_epochs);

// dL/dtheta over the batch. In parameter_shift mode, angles of gates with a
// Pauli generator (RX/RY/RZ/XX/YY/ZZ) use exact +-pi/2 shifts on the class
// scores with coefficient 1/2, chained through the loss; U3/CU3 angles fall
// back to central differences. finite_difference mode uses central
// differences of the loss for every angle. Throws on a non-finite loss.
std::vector<double> gradient(const CircuitArchitecture& arch, std::span<const double> params,
                             std::span<const StateVector> states, std::span<const int> labels,
                             const ReadoutSpec& readout, LossKind loss_kind, GradientMode mode,
                             double fd_step = 1e-4);

// Adam (0.9 / 0.999 / 1e-8) with the cosine schedule, theta(0) ~ N(0, I/p).
// Trains on the dataset's train split (all rows if none); accuracies are
// measured on the train and test splits with the final parameters.
TrainResult train(const CircuitArchitecture& arch, const Dataset& dataset,
                  const ReadoutSpec& readout, const TrainConfig& config);

// Mean argmax-vs-label agreement over the given rows; score ties resolve to
// the lower class index. NaN for an empty index list.
double evaluate(const CircuitArchitecture& arch, std::span<const double> params,
                const Dataset& dataset, std::span<const std::size_t> rows,
                const ReadoutSpec& readout);

}  // namespace qas
