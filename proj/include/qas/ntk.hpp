#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qas/datagen.hpp"
#include "qas/linalg.hpp"
#include "qas/loss.hpp"
#include "qas/readout.hpp"
#include "qas/statevector.hpp"

namespace qas {

// Symmetric kernel matrix over a data batch; source of lambda_min.
struct GramMatrix {
    SymMatrix entries;
    std::vector<std::size_t> batch_ids;  // sample indices the matrix was built from
};

// theta ~ N(0, I/p): i.i.d. Gaussian entries with variance 1/p.
std::vector<double> sample_init_params(const CircuitArchitecture& arch, std::uint64_t seed);

// Kernel entry for evolved states phi = U(theta)|encode(x)> and a Pauli M:
//   tr(i[M, rho_k] i[M, rho_l]) = 2(|<phi_k|phi_l>|^2 - |<phi_k|M|phi_l>|^2),
// the closed form valid because M^2 = I. Tests pin this equivalence against
// the dense density-matrix commutator computation.
double kernel_entry(const StateVector& phi_k, const StateVector& phi_l,
                    const PauliObservable& obs);

// Evolves each encoded state once through the circuit; entry (k,l) sums
// kernel_entry over the readout observables. Upper triangle computed,
// lower mirrored.
GramMatrix build_gram(const CircuitArchitecture& arch, std::span<const double> params,
                      std::span<const StateVector> encoded_batch,
                      std::span<const PauliObservable> observables);

// Smallest eigenvalue via the deterministic symmetric eigensolver. Throws on
// asymmetry beyond 1e-8 or residual beyond 1e-8 * ||K||_inf.
double min_eigenvalue(const GramMatrix& gram);

// Contract identical to trainer-side loss; the surrogate evaluates it at the
// sampled initialization.
double initial_loss(const CircuitArchitecture& arch, std::span<const double> params,
                    std::span<const StateVector> states, std::span<const int> labels,
                    const ReadoutSpec& readout, LossKind kind);

struct AmesConfig {
    std::size_t batch_size = 100;  // capped at the dataset pool size
    std::uint64_t seed = 0;
    LossKind loss_kind = LossKind::MSE;
    ReadoutSpec readout;
    bool param_scaling = true;  // include the 1/p_c factor
    int trials = 1;             // theta draws averaged into the Gram estimate
};

// g(c) = (1/p_c) * L(theta(0)) * exp(-lambda_min / 2); lower is better.
struct AmesScore {
    double value = 0.0;
    double lambda_min = 0.0;
    double initial_loss = 0.0;
    int param_count = 0;
    std::uint64_t seed = 0;
};

// Scoring handle: subsamples the batch (without replacement, seeded) and
// encodes it once, then scores any number of candidate circuits. Repeated
// calls with the same configuration and circuit give identical scores.
// Parameterless circuits receive value = +inf, the "worst possible" sentinel.
class AmesScorer {
  public:
    AmesScorer(const Dataset& dataset, AmesConfig config);

    AmesScore operator()(const CircuitArchitecture& arch) const;

    const std::vector<std::size_t>& batch_ids() const { return batch_ids_; }
    const AmesConfig& config() const { return config_; }

  private:
    AmesConfig config_;
    std::vector<std::size_t> batch_ids_;
    std::vector<StateVector> states_;
    std::vector<int> labels_;
    std::vector<PauliObservable> observables_;
};

// One-shot convenience over AmesScorer.
AmesScore score_ames(const CircuitArchitecture& arch, const Dataset& dataset,
                     const AmesConfig& config);

// Gram-entry variance across independent theta draws, one row per probed
// architecture; the concentration signature of the asymptotic kernel.
struct ProbeRow {
    int param_count = 0;
    double mean_entry_variance = 0.0;
    bool degenerate = false;  // fewer than two trials
};

std::vector<ProbeRow> concentration_probe(std::span<const CircuitArchitecture> architectures,
                                          std::span<const StateVector> encoded_batch,
                                          std::span<const PauliObservable> observables,
                                          int trials, std::uint64_t seed);

// Probe family: a deep chain of single-qubit rotations where the measured
// qubit receives a fixed number of rotations and the remainder is spread
// over the spectator qubits. With per-angle variance 1/p the measured
// qubit's total rotation budget shrinks as p grows, which is the mechanism
// behind the entry-variance decay the probe checks; chains that split the
// gates evenly keep an O(1) budget per qubit and their variance saturates.
CircuitArchitecture concentration_probe_chain(int num_qubits, int param_count,
                                              int gates_on_measured_qubit);

}  // namespace qas
