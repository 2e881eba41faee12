#include "qas/correlate.hpp"

#include <cmath>
#include <limits>
#include <fstream>
#include <stdexcept>

#include "qas/kvio.hpp"

namespace qas {

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) return std::nullopt;
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx <= 0.0 || syy <= 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

CorrelationResult run_correlation_study(const Dataset& dataset, const CorrelateConfig& config) {
    if (config.num_circuits < 2) throw std::invalid_argument("correlate: need >= 2 circuits");
    if (config.gates_min < 1 || config.gates_max < config.gates_min)
        throw std::invalid_argument("correlate: bad gate range");
    dataset.validate();
    const int d = dataset.num_qubits();
    config.ames.readout.validate(d);
    AmesScorer scorer(dataset, config.ames);

    std::vector<StateVector> test_states = dataset.encode_rows(dataset.test_idx);
    std::vector<int> test_labels;
    for (std::size_t i : dataset.test_idx) test_labels.push_back(dataset.labels[i]);

    CorrelationResult result;
    Rng rng(derive_seed(config.seed, "correlate"));
    for (int k = 0; k < config.num_circuits; ++k) {
        CircuitArchitecture arch;
        AmesScore score;
        // parameterless draws (possible in CNOT-bearing gate sets) carry no
        // trainable signal; redraw them
        for (int attempt = 0; attempt < 64; ++attempt) {
            int gates = static_cast<int>(rng.uniform_int(config.gates_min, config.gates_max));
            arch = random_architecture(d, gates, config.gate_probs, config.topology, rng);
            if (arch.param_count >= 1) break;
        }
        if (arch.param_count < 1)
            throw std::runtime_error("correlate: could not draw a parameterized circuit");
        score = scorer(arch);

        TrainConfig tc;
        tc.epochs = config.train_iters;
        tc.learning_rate = config.learning_rate;
        tc.loss_kind = config.ames.loss_kind;
        tc.seed = derive_seed(config.seed, "train", static_cast<std::uint64_t>(k));
        TrainResult tr = train(arch, dataset, config.ames.readout, tc);

        CorrelationRow row;
        row.index = k;
        row.gates = arch.gate_count();
        row.param_count = arch.param_count;
        row.ames = score.value;
        row.lambda_min = score.lambda_min;
        row.train_loss = tr.loss_curve.back();
        row.test_loss = test_states.empty()
                            ? std::numeric_limits<double>::quiet_NaN()
                            : compute_loss(arch, tr.final_params, test_states, test_labels,
                                           config.ames.readout, config.ames.loss_kind);
        result.rows.push_back(row);
    }

    std::vector<double> ames_col, train_col, test_col;
    for (const auto& r : result.rows) {
        ames_col.push_back(r.ames);
        train_col.push_back(r.train_loss);
        test_col.push_back(r.test_loss);
    }
    result.pearson_train = pearson(ames_col, train_col);
    bool test_ok = !test_col.empty();
    for (double v : test_col) test_ok = test_ok && std::isfinite(v);
    result.pearson_test = test_ok ? pearson(ames_col, test_col) : std::nullopt;
    return result;
}

void write_correlation_csv(const std::string& path, const CorrelationResult& result) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write correlation csv: " + path);
    out << "circuit,gates,p_c,ames,lambda_min,train_loss,test_loss\n";
    for (const auto& r : result.rows) {
        out << r.index << ',' << r.gates << ',' << r.param_count << ',' << format_double(r.ames)
            << ',' << format_double(r.lambda_min) << ',' << format_double(r.train_loss) << ','
            << format_double(r.test_loss) << '\n';
    }
}

}  // namespace qas
