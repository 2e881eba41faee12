#include "qas/ntk.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qas/rng.hpp"

namespace qas {

std::vector<double> sample_init_params(const CircuitArchitecture& arch, std::uint64_t seed) {
    const int p = arch.param_count;
    if (p < 1) throw std::invalid_argument("sample_init_params: circuit has no parameters");
    Rng rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(p));
    std::vector<double> theta(p);
    for (int i = 0; i < p; ++i) theta[i] = scale * rng.normal();
    return theta;
}

double kernel_entry(const StateVector& phi_k, const StateVector& phi_l,
                    const PauliObservable& obs) {
    if (phi_k.dim() != phi_l.dim()) throw std::invalid_argument("kernel_entry: dimension mismatch");
    Complex overlap = inner_product(phi_k, phi_l);
    Complex melem = matrix_element(phi_k, obs, phi_l);
    return 2.0 * (std::norm(overlap) - std::norm(melem));
}

GramMatrix build_gram(const CircuitArchitecture& arch, std::span<const double> params,
                      std::span<const StateVector> encoded_batch,
                      std::span<const PauliObservable> observables) {
    if (encoded_batch.empty()) throw std::invalid_argument("build_gram: empty batch");
    const std::size_t n = encoded_batch.size();

    std::vector<StateVector> evolved;
    evolved.reserve(n);
    for (const auto& s : encoded_batch) evolved.push_back(run_circuit(arch, params, s));

    // Cache M|phi_l> per observable so each pair costs two inner products.
    std::vector<std::vector<StateVector>> applied(observables.size());
    for (std::size_t o = 0; o < observables.size(); ++o) {
        applied[o].reserve(n);
        for (const auto& s : evolved) applied[o].push_back(apply_pauli(s, observables[o]));
    }

    GramMatrix gram;
    gram.entries = SymMatrix::zeros(n);
    gram.batch_ids.resize(n);
    for (std::size_t i = 0; i < n; ++i) gram.batch_ids[i] = i;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t l = k; l < n; ++l) {
            Complex overlap = inner_product(evolved[k], evolved[l]);
            double entry = 0.0;
            for (std::size_t o = 0; o < observables.size(); ++o) {
                Complex melem = inner_product(evolved[k], applied[o][l]);
                entry += 2.0 * (std::norm(overlap) - std::norm(melem));
            }
            gram.entries.at(k, l) = entry;
            gram.entries.at(l, k) = entry;
        }
    }
    return gram;
}

double min_eigenvalue(const GramMatrix& gram) {
    const SymMatrix& k = gram.entries;
    if (k.n == 0) throw std::invalid_argument("min_eigenvalue: empty matrix");
    if (k.max_asymmetry() > 1e-8)
        throw std::runtime_error("min_eigenvalue: matrix asymmetric beyond 1e-8");
    SymmetricEigen eig = symmetric_eigen(k);
    double lambda = eig.eigenvalues[0];
    double tol = 1e-8 * std::max(k.inf_norm(), 1.0);
    if (eigen_residual_inf(k, eig.eigenvectors[0], lambda) > tol)
        throw std::runtime_error("min_eigenvalue: eigenpair residual exceeds tolerance");
    return lambda;
}

double initial_loss(const CircuitArchitecture& arch, std::span<const double> params,
                    std::span<const StateVector> states, std::span<const int> labels,
                    const ReadoutSpec& readout, LossKind kind) {
    return compute_loss(arch, params, states, labels, readout, kind);
}

AmesScorer::AmesScorer(const Dataset& dataset, AmesConfig config) : config_(std::move(config)) {
    if (dataset.size() == 0) throw std::invalid_argument("score_ames: empty dataset");
    if (config_.trials < 1) throw std::invalid_argument("score_ames: trials must be >= 1");
    std::vector<std::size_t> pool = dataset.pool_indices();
    std::size_t take = std::min(config_.batch_size, pool.size());
    if (take == 0) throw std::invalid_argument("score_ames: empty batch pool");
    Rng rng(derive_seed(config_.seed, "batch"));
    std::vector<std::size_t> picks = rng.sample_without_replacement(pool.size(), take);
    batch_ids_.reserve(take);
    for (std::size_t i : picks) batch_ids_.push_back(pool[i]);
    states_ = dataset.encode_rows(batch_ids_);
    labels_.reserve(take);
    for (std::size_t i : batch_ids_) labels_.push_back(dataset.labels[i]);
    if (config_.readout.class_groups.empty())
        throw std::invalid_argument("score_ames: readout not configured");
    config_.readout.validate(dataset.num_qubits());
    observables_ = config_.readout.observables(dataset.num_qubits());
}

AmesScore AmesScorer::operator()(const CircuitArchitecture& arch) const {
    AmesScore score;
    score.seed = config_.seed;
    score.param_count = arch.param_count;
    if (arch.param_count < 1) {
        // Unscoreable: worst-possible sentinel so the search can still hold
        // the node; the loss/lambda fields stay at their defaults.
        score.value = std::numeric_limits<double>::infinity();
        return score;
    }

    SymMatrix sum;
    double loss_sum = 0.0;
    for (int t = 0; t < config_.trials; ++t) {
        std::uint64_t theta_seed = config_.trials == 1 ? derive_seed(config_.seed, "theta")
                                                       : derive_seed(config_.seed, "theta", t);
        std::vector<double> theta = sample_init_params(arch, theta_seed);
        GramMatrix gram = build_gram(arch, theta, states_, observables_);
        if (t == 0) {
            sum = gram.entries;
        } else {
            for (std::size_t i = 0; i < sum.a.size(); ++i) sum.a[i] += gram.entries.a[i];
        }
        loss_sum += initial_loss(arch, theta, states_, labels_, config_.readout, config_.loss_kind);
    }
    if (config_.trials > 1)
        for (double& v : sum.a) v /= config_.trials;

    GramMatrix averaged;
    averaged.entries = std::move(sum);
    averaged.batch_ids = batch_ids_;
    score.lambda_min = min_eigenvalue(averaged);
    score.initial_loss = loss_sum / config_.trials;
    double base = score.initial_loss * std::exp(-score.lambda_min / 2.0);
    score.value = config_.param_scaling ? base / arch.param_count : base;
    return score;
}

AmesScore score_ames(const CircuitArchitecture& arch, const Dataset& dataset,
                     const AmesConfig& config) {
    return AmesScorer(dataset, config)(arch);
}

std::vector<ProbeRow> concentration_probe(std::span<const CircuitArchitecture> architectures,
                                          std::span<const StateVector> encoded_batch,
                                          std::span<const PauliObservable> observables,
                                          int trials, std::uint64_t seed) {
    if (architectures.empty()) throw std::invalid_argument("concentration_probe: no architectures");
    if (trials < 1) throw std::invalid_argument("concentration_probe: trials must be >= 1");
    std::vector<ProbeRow> rows;
    rows.reserve(architectures.size());
    const std::size_t n = encoded_batch.size();
    for (const auto& arch : architectures) {
        std::vector<double> mean(n * n, 0.0), m2(n * n, 0.0);
        for (int t = 0; t < trials; ++t) {
            std::vector<double> theta =
                sample_init_params(arch, derive_seed(seed, "trial", static_cast<std::uint64_t>(t)));
            GramMatrix gram = build_gram(arch, theta, encoded_batch, observables);
            // Welford update per entry
            for (std::size_t i = 0; i < mean.size(); ++i) {
                double x = gram.entries.a[i];
                double delta = x - mean[i];
                mean[i] += delta / (t + 1);
                m2[i] += delta * (x - mean[i]);
            }
        }
        ProbeRow row;
        row.param_count = arch.param_count;
        row.degenerate = trials < 2;
        if (!row.degenerate) {
            double acc = 0.0;
            for (double v : m2) acc += v / (trials - 1);
            row.mean_entry_variance = acc / static_cast<double>(mean.size());
        }
        rows.push_back(row);
    }
    return rows;
}

CircuitArchitecture concentration_probe_chain(int num_qubits, int param_count,
                                              int gates_on_measured_qubit) {
    if (num_qubits < 2) throw std::invalid_argument("probe chain needs >= 2 qubits");
    if (gates_on_measured_qubit < 1 || gates_on_measured_qubit > param_count)
        throw std::invalid_argument("probe chain: bad measured-qubit gate count");
    CircuitArchitecture arch = CircuitArchitecture::empty(num_qubits);
    const GateKind axes[3] = {GateKind::RY, GateKind::RZ, GateKind::RX};
    for (int i = 0; i < gates_on_measured_qubit; ++i) arch.append(axes[i % 3], 0);
    int rest = param_count - gates_on_measured_qubit;
    for (int i = 0; i < rest; ++i) arch.append(axes[(i + 1) % 3], 1 + i % (num_qubits - 1));
    return arch;
}

}  // namespace qas
