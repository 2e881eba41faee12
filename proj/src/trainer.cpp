#include "qas/trainer.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qas/ntk.hpp"
#include "qas/rng.hpp"

namespace qas {

GradientMode gradient_mode_from_name(std::string_view name) {
    if (name == "shift" || name == "parameter_shift") return GradientMode::parameter_shift;
    if (name == "fd" || name == "finite_difference") return GradientMode::finite_difference;
    throw std::invalid_argument("unknown gradient mode: " + std::string(name));
}

std::string_view gradient_mode_name(GradientMode mode) {
    return mode == GradientMode::parameter_shift ? "shift" : "fd";
}

void TrainConfig::validate() const {
    if (!(learning_rate > 0.0)) throw std::invalid_argument("train: learning rate must be > 0");
    if (epochs < 1) throw std::invalid_argument("train: epochs must be >= 1");
    if (!(fd_step > 0.0)) throw std::invalid_argument("train: fd step must be > 0");
}

double cosine_lr(double eta, int t, int total_epochs) {
    return eta * (1.0 + std::cos(std::numbers::pi * t / total_epochs)) / 2.0;
}

namespace {

bool has_pauli_generator(GateKind kind) {
    switch (kind) {
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::XX:
        case GateKind::YY:
        case GateKind::ZZ:
            return true;
        default:
            return false;
    }
}

// dL/ds for each sample and class, at the given scores.
std::vector<std::vector<double>> loss_score_gradient(
    const std::vector<std::vector<double>>& scores, std::span<const int> labels, int num_classes,
    LossKind kind) {
    const double n = static_cast<double>(scores.size());
    std::vector<std::vector<double>> grad(scores.size(), std::vector<double>(num_classes, 0.0));
    for (std::size_t m = 0; m < scores.size(); ++m) {
        if (kind == LossKind::MSE) {
            for (int c = 0; c < num_classes; ++c) {
                double target = (c == labels[m]) ? 1.0 : 0.0;
                grad[m][c] = (scores[m][c] - target) / n;
            }
        } else {
            std::vector<double> probs = softmax(scores[m]);
            for (int c = 0; c < num_classes; ++c) {
                double target = (c == labels[m]) ? 1.0 : 0.0;
                grad[m][c] = (probs[c] - target) / n;
            }
        }
    }
    return grad;
}

}  // namespace

std::vector<double> gradient(const CircuitArchitecture& arch, std::span<const double> params,
                             std::span<const StateVector> states, std::span<const int> labels,
                             const ReadoutSpec& readout, LossKind loss_kind, GradientMode mode,
                             double fd_step) {
    if (static_cast<int>(params.size()) != arch.param_count)
        throw std::invalid_argument("gradient: parameter length mismatch");
    std::vector<double> grad(params.size(), 0.0);
    if (params.empty()) return grad;

    std::vector<std::vector<double>> base_scores = batch_scores(arch, params, states, readout);
    double base_loss = loss_from_scores(base_scores, labels, readout.num_classes(), loss_kind);
    if (!std::isfinite(base_loss))
        throw std::runtime_error("gradient: loss is not finite at the evaluation point");
    std::vector<std::vector<double>> dl_ds =
        loss_score_gradient(base_scores, labels, readout.num_classes(), loss_kind);

    std::vector<double> shifted(params.begin(), params.end());
    for (const auto& g : arch.gates) {
        if (!g.trainable()) continue;
        const int np = gate_param_count(g.kind);
        for (int j = 0; j < np; ++j) {
            const int idx = g.param_offset + j;
            bool use_shift = mode == GradientMode::parameter_shift && has_pauli_generator(g.kind);
            if (use_shift) {
                shifted[idx] = params[idx] + std::numbers::pi / 2;
                auto plus = batch_scores(arch, shifted, states, readout);
                shifted[idx] = params[idx] - std::numbers::pi / 2;
                auto minus = batch_scores(arch, shifted, states, readout);
                shifted[idx] = params[idx];
                double acc = 0.0;
                for (std::size_t m = 0; m < states.size(); ++m)
                    for (int c = 0; c < readout.num_classes(); ++c)
                        acc += dl_ds[m][c] * (plus[m][c] - minus[m][c]) / 2.0;
                grad[idx] = acc;
            } else {
                shifted[idx] = params[idx] + fd_step;
                double lp = compute_loss(arch, shifted, states, labels, readout, loss_kind);
                shifted[idx] = params[idx] - fd_step;
                double lm = compute_loss(arch, shifted, states, labels, readout, loss_kind);
                shifted[idx] = params[idx];
                if (!std::isfinite(lp) || !std::isfinite(lm))
                    throw std::runtime_error("gradient: non-finite loss in finite difference");
                grad[idx] = (lp - lm) / (2.0 * fd_step);
            }
        }
    }
    return grad;
}

TrainResult train(const CircuitArchitecture& arch, const Dataset& dataset,
                  const ReadoutSpec& readout, const TrainConfig& config) {
    config.validate();
    dataset.validate();
    if (arch.param_count < 1) throw std::invalid_argument("train: circuit has no parameters");
    readout.validate(arch.num_qubits);

    std::vector<std::size_t> train_rows = dataset.pool_indices();
    std::vector<StateVector> states = dataset.encode_rows(train_rows);
    std::vector<int> labels(train_rows.size());
    for (std::size_t i = 0; i < train_rows.size(); ++i) labels[i] = dataset.labels[train_rows[i]];

    std::vector<double> theta = sample_init_params(arch, derive_seed(config.seed, "init"));
    std::vector<double> m(theta.size(), 0.0), v(theta.size(), 0.0);
    const double b1 = 0.9, b2 = 0.999, eps = 1e-8;
    long long step = 0;

    Rng batch_rng(derive_seed(config.seed, "batches"));
    const std::size_t n = states.size();
    const std::size_t bs = config.batch_size == 0 ? n : std::min(config.batch_size, n);

    TrainResult result;
    result.loss_curve.reserve(config.epochs);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double lr = cosine_lr(config.learning_rate, epoch, config.epochs);

        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        if (bs < n) {
            for (std::size_t i = n; i-- > 1;) {
                std::size_t j = static_cast<std::size_t>(batch_rng.uniform_int(0, static_cast<long long>(i)));
                std::swap(order[i], order[j]);
            }
        }

        for (std::size_t start = 0; start < n; start += bs) {
            std::size_t end = std::min(start + bs, n);
            std::vector<StateVector> batch_states;
            std::vector<int> batch_labels;
            batch_states.reserve(end - start);
            for (std::size_t i = start; i < end; ++i) {
                batch_states.push_back(states[order[i]]);
                batch_labels.push_back(labels[order[i]]);
            }
            std::vector<double> g = gradient(arch, theta, batch_states, batch_labels, readout,
                                             config.loss_kind, config.gradient_mode, config.fd_step);
            ++step;
            double c1 = 1.0 - std::pow(b1, static_cast<double>(step));
            double c2 = 1.0 - std::pow(b2, static_cast<double>(step));
            for (std::size_t i = 0; i < theta.size(); ++i) {
                m[i] = b1 * m[i] + (1.0 - b1) * g[i];
                v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
                theta[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + eps);
            }
        }

        double epoch_loss = compute_loss(arch, theta, states, labels, readout, config.loss_kind);
        if (!std::isfinite(epoch_loss) || epoch_loss > 1e6)
            throw std::runtime_error("train: loss diverged at epoch " + std::to_string(epoch));
        result.loss_curve.push_back(epoch_loss);
    }

    result.final_params = theta;
    result.train_accuracy = evaluate(arch, theta, dataset, train_rows, readout);
    result.test_accuracy = dataset.test_idx.empty()
                               ? std::numeric_limits<double>::quiet_NaN()
                               : evaluate(arch, theta, dataset, dataset.test_idx, readout);
    return result;
}

double evaluate(const CircuitArchitecture& arch, std::span<const double> params,
                const Dataset& dataset, std::span<const std::size_t> rows,
                const ReadoutSpec& readout) {
    if (rows.empty()) return std::numeric_limits<double>::quiet_NaN();
    std::size_t correct = 0;
    for (std::size_t row : rows) {
        StateVector state = dataset.encode_row(row);
        run_circuit_inplace(arch, params, state);
        std::vector<double> scores = class_scores(state, readout);
        int pick = 0;
        for (int c = 1; c < static_cast<int>(scores.size()); ++c)
            if (scores[c] > scores[pick]) pick = c;  // ties keep the lower index
        if (pick == dataset.labels[row]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(rows.size());
}

}  // namespace qas
