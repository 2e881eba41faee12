#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qas/circuit.hpp"

namespace qas {

// Which qubit pairs two-qubit gates may touch. Edges are undirected and
// stored normalized (a < b).
struct TopologyConstraint {
    enum class Kind { full, ring, explicit_edges };

    Kind kind = Kind::full;
    std::vector<std::pair<int, int>> edges;  // explicit_edges only

    static TopologyConstraint full();
    static TopologyConstraint ring();
    static TopologyConstraint explicit_edges_of(std::vector<std::pair<int, int>> edges);
    // IBM's 5-qubit ibmq_quito device: 0-1, 1-2, 1-3, 3-4.
    static TopologyConstraint ibmq_quito();

    std::vector<std::pair<int, int>> allowed_pairs(int num_qubits) const;
    bool allows(int a, int b, int num_qubits) const;

    // "full" | "ring" | "ibmq_quito" | "explicit:0-1,1-2,..."
    static TopologyConstraint parse(std::string_view text);
    std::string to_string() const;
};

// True when every two-qubit gate in the architecture touches an allowed pair.
bool respects_topology(const CircuitArchitecture& arch, const TopologyConstraint& topology);

}  // namespace qas
