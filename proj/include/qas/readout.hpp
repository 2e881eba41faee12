#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "qas/statevector.hpp"

namespace qas {

// Maps qubit groups to classes: the score of class c is the sum of <Z_q>
// over its group; class probabilities are the softmax of the scores.
struct ReadoutSpec {
    std::vector<std::vector<int>> class_groups;

    int num_classes() const { return static_cast<int>(class_groups.size()); }
    void validate(int num_qubits) const;  // throws on missing/duplicate qubits

    // One Z Pauli string per group member, flattened in group order; these
    // are the measurement operators entering the kernel.
    std::vector<PauliObservable> observables(int num_qubits) const;

    // "0,1|2,3" -> two classes over qubits {0,1} and {2,3}.
    static ReadoutSpec parse(std::string_view text);
    std::string to_string() const;

    // Binary default used throughout: qubits split into a low and a high group.
    static ReadoutSpec paired_binary(int num_qubits);
    static ReadoutSpec one_per_qubit(int num_classes);
};

// Raw per-class scores (pre-softmax) of an already-evolved state.
std::vector<double> class_scores(const StateVector& state, const ReadoutSpec& readout);

std::vector<double> softmax(std::span<const double> scores);

// Full forward pass: encode -> run_circuit -> scores -> softmax.
std::vector<double> predict(const CircuitArchitecture& arch, std::span<const double> params,
                            std::span<const double> input, const EncodingScheme& scheme,
                            const ReadoutSpec& readout);

// As predict, but for a pre-encoded state (amplitude-direct datasets).
std::vector<double> predict_state(const CircuitArchitecture& arch, std::span<const double> params,
                                  const StateVector& input, const ReadoutSpec& readout);

}  // namespace qas
