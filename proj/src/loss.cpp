#include "qas/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace qas {

LossKind loss_kind_from_name(std::string_view name) {
    if (name == "mse" || name == "MSE") return LossKind::MSE;
    if (name == "ce" || name == "CE") return LossKind::CE;
    throw std::invalid_argument("unknown loss kind: " + std::string(name));
}

std::string_view loss_kind_name(LossKind kind) {
    return kind == LossKind::MSE ? "mse" : "ce";
}

std::vector<std::vector<double>> batch_scores(const CircuitArchitecture& arch,
                                              std::span<const double> params,
                                              std::span<const StateVector> states,
                                              const ReadoutSpec& readout) {
    std::vector<std::vector<double>> scores;
    scores.reserve(states.size());
    for (const auto& s : states) {
        StateVector evolved = run_circuit(arch, params, s);
        scores.push_back(class_scores(evolved, readout));
    }
    return scores;
}

double loss_from_scores(const std::vector<std::vector<double>>& scores,
                        std::span<const int> labels, int num_classes, LossKind kind) {
    if (scores.size() != labels.size()) throw std::invalid_argument("loss: size mismatch");
    if (scores.empty()) throw std::invalid_argument("loss: empty batch");
    for (int y : labels)
        if (y < 0 || y >= num_classes) throw std::invalid_argument("label out of class range");

    const double n = static_cast<double>(scores.size());
    double acc = 0.0;
    if (kind == LossKind::MSE) {
        for (std::size_t m = 0; m < scores.size(); ++m) {
            for (int c = 0; c < num_classes; ++c) {
                double target = (c == labels[m]) ? 1.0 : 0.0;
                double diff = scores[m][c] - target;
                acc += diff * diff;
            }
        }
        return acc / (2.0 * n);
    }
    for (std::size_t m = 0; m < scores.size(); ++m) {
        std::vector<double> probs = softmax(scores[m]);
        double p = probs[labels[m]];
        acc -= std::log(p > 1e-300 ? p : 1e-300);
    }
    return acc / n;
}

double compute_loss(const CircuitArchitecture& arch, std::span<const double> params,
                    std::span<const StateVector> states, std::span<const int> labels,
                    const ReadoutSpec& readout, LossKind kind) {
    return loss_from_scores(batch_scores(arch, params, states, readout), labels,
                            readout.num_classes(), kind);
}

}  // namespace qas
