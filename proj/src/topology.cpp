#include "qas/topology.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace qas {

TopologyConstraint TopologyConstraint::full() { return {Kind::full, {}}; }

TopologyConstraint TopologyConstraint::ring() { return {Kind::ring, {}}; }

TopologyConstraint TopologyConstraint::explicit_edges_of(std::vector<std::pair<int, int>> edges) {
    std::set<std::pair<int, int>> dedup;
    for (auto [a, b] : edges) {
        if (a == b || a < 0 || b < 0) throw std::invalid_argument("bad topology edge");
        dedup.insert({std::min(a, b), std::max(a, b)});
    }
    TopologyConstraint t;
    t.kind = Kind::explicit_edges;
    t.edges.assign(dedup.begin(), dedup.end());
    return t;
}

TopologyConstraint TopologyConstraint::ibmq_quito() {
    return explicit_edges_of({{0, 1}, {1, 2}, {1, 3}, {3, 4}});
}

std::vector<std::pair<int, int>> TopologyConstraint::allowed_pairs(int num_qubits) const {
    std::vector<std::pair<int, int>> pairs;
    switch (kind) {
        case Kind::full:
            for (int a = 0; a < num_qubits; ++a)
                for (int b = a + 1; b < num_qubits; ++b) pairs.push_back({a, b});
            break;
        case Kind::ring: {
            // pairs (i, (i+1) mod d), deduplicated; d=2 collapses to one edge
            std::set<std::pair<int, int>> dedup;
            for (int i = 0; i < num_qubits; ++i) {
                int j = (i + 1) % num_qubits;
                if (i != j) dedup.insert({std::min(i, j), std::max(i, j)});
            }
            pairs.assign(dedup.begin(), dedup.end());
            break;
        }
        case Kind::explicit_edges:
            for (auto [a, b] : edges)
                if (a < num_qubits && b < num_qubits) pairs.push_back({a, b});
            break;
    }
    return pairs;
}

bool TopologyConstraint::allows(int a, int b, int num_qubits) const {
    if (a == b || a < 0 || b < 0 || a >= num_qubits || b >= num_qubits) return false;
    auto pairs = allowed_pairs(num_qubits);
    std::pair<int, int> key{std::min(a, b), std::max(a, b)};
    return std::find(pairs.begin(), pairs.end(), key) != pairs.end();
}

TopologyConstraint TopologyConstraint::parse(std::string_view text) {
    if (text == "full") return full();
    if (text == "ring") return ring();
    if (text == "ibmq_quito") return ibmq_quito();
    constexpr std::string_view prefix = "explicit:";
    if (text.substr(0, prefix.size()) == prefix) {
        std::vector<std::pair<int, int>> edges;
        std::string_view rest = text.substr(prefix.size());
        std::size_t pos = 0;
        while (pos < rest.size()) {
            std::size_t end = rest.find(',', pos);
            if (end == std::string_view::npos) end = rest.size();
            std::string_view edge = rest.substr(pos, end - pos);
            std::size_t dash = edge.find('-');
            if (dash == std::string_view::npos)
                throw std::invalid_argument("topology edge must look like a-b");
            edges.push_back({std::stoi(std::string(edge.substr(0, dash))),
                             std::stoi(std::string(edge.substr(dash + 1)))});
            pos = end + 1;
        }
        return explicit_edges_of(std::move(edges));
    }
    throw std::invalid_argument("unknown topology: " + std::string(text));
}

std::string TopologyConstraint::to_string() const {
    switch (kind) {
        case Kind::full: return "full";
        case Kind::ring: return "ring";
        case Kind::explicit_edges: {
            std::string out = "explicit:";
            for (std::size_t i = 0; i < edges.size(); ++i) {
                if (i) out += ',';
                out += std::to_string(edges[i].first) + "-" + std::to_string(edges[i].second);
            }
            return out;
        }
    }
    return "full";
}

bool respects_topology(const CircuitArchitecture& arch, const TopologyConstraint& topology) {
    for (const auto& g : arch.gates) {
        if (!gate_is_two_qubit(g.kind)) continue;
        if (!topology.allows(g.qubits[0], g.qubits[1], arch.num_qubits)) return false;
    }
    return true;
}

}  // namespace qas
