#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace qas {

enum class PauliFactor { I, X, Y, Z };

// Tensor product of single-qubit Pauli factors; squares to identity, which
// the kernel closed form relies on.
struct PauliObservable {
    std::vector<PauliFactor> factors;  // factors[q] acts on qubit q

    int num_qubits() const { return static_cast<int>(factors.size()); }
    bool is_identity() const;
    bool diagonal() const;  // only I/Z factors

    static PauliObservable single_z(int qubit, int num_qubits);
    static PauliObservable parse(std::string_view text);  // e.g. "ZIIZ" (qubit 0 first)
    std::string to_string() const;
};

}  // namespace qas
