#include "qas/circuit.hpp"

#include <cctype>
#include <stdexcept>
#include <string>

namespace qas {

int gate_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CU3:
        case GateKind::XX:
        case GateKind::YY:
        case GateKind::ZZ:
        case GateKind::CNOT:
            return 2;
        default:
            return 1;
    }
}

int gate_param_count(GateKind kind) {
    switch (kind) {
        case GateKind::U3:
        case GateKind::CU3:
            return 3;
        case GateKind::CNOT:
            return 0;
        default:
            return 1;
    }
}

bool gate_is_two_qubit(GateKind kind) { return gate_arity(kind) == 2; }

std::string_view gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::U3: return "U3";
        case GateKind::CU3: return "CU3";
        case GateKind::XX: return "XX";
        case GateKind::YY: return "YY";
        case GateKind::ZZ: return "ZZ";
        case GateKind::CNOT: return "CNOT";
    }
    throw std::invalid_argument("gate_name: bad kind");
}

GateKind gate_from_name(std::string_view name) {
    if (name == "RX") return GateKind::RX;
    if (name == "RY") return GateKind::RY;
    if (name == "RZ") return GateKind::RZ;
    if (name == "U3") return GateKind::U3;
    if (name == "CU3") return GateKind::CU3;
    if (name == "XX") return GateKind::XX;
    if (name == "YY") return GateKind::YY;
    if (name == "ZZ") return GateKind::ZZ;
    if (name == "CNOT") return GateKind::CNOT;
    throw std::invalid_argument("unknown gate name: " + std::string(name));
}

CircuitArchitecture CircuitArchitecture::empty(int num_qubits) {
    if (num_qubits < 1) throw std::invalid_argument("architecture needs >= 1 qubit");
    CircuitArchitecture arch;
    arch.num_qubits = num_qubits;
    return arch;
}

void CircuitArchitecture::append(GateKind kind, int q0, int q1) {
    GateInstance g;
    g.kind = kind;
    g.qubits = {q0, q1 < 0 ? 0 : q1};
    g.param_offset = param_count;
    gates.push_back(g);
    param_count += gate_param_count(kind);
}

void CircuitArchitecture::append_fixed(GateKind kind, std::vector<double> angles, int q0, int q1) {
    if (static_cast<int>(angles.size()) != gate_param_count(kind))
        throw std::invalid_argument("append_fixed: angle count mismatch");
    GateInstance g;
    g.kind = kind;
    g.qubits = {q0, q1 < 0 ? 0 : q1};
    g.param_offset = GateInstance::kFixedAngles;
    g.fixed_angles = std::move(angles);
    gates.push_back(g);
}

void CircuitArchitecture::reindex_parameters() {
    int offset = 0;
    for (auto& g : gates) {
        if (!g.trainable()) continue;
        g.param_offset = offset;
        offset += gate_param_count(g.kind);
    }
    param_count = offset;
}

void CircuitArchitecture::validate() const {
    int expected = 0;
    for (const auto& g : gates) {
        int arity = gate_arity(g.kind);
        for (int i = 0; i < arity; ++i) {
            if (g.qubits[i] < 0 || g.qubits[i] >= num_qubits)
                throw std::invalid_argument("gate qubit index out of range");
        }
        if (arity == 2 && g.qubits[0] == g.qubits[1])
            throw std::invalid_argument("two-qubit gate with identical qubits");
        if (g.trainable()) {
            if (g.param_offset != expected)
                throw std::invalid_argument("non-contiguous parameter offsets");
            expected += gate_param_count(g.kind);
        } else if (static_cast<int>(g.fixed_angles.size()) != gate_param_count(g.kind)) {
            throw std::invalid_argument("fixed gate angle count mismatch");
        }
    }
    if (expected != param_count)
        throw std::invalid_argument("param_count does not match trainable gates");
}

EncodingScheme EncodingScheme::parse(std::string_view text, int num_qubits) {
    EncodingScheme scheme;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view group = text.substr(pos, end - pos);
        // trim spaces
        while (!group.empty() && std::isspace(static_cast<unsigned char>(group.front()))) group.remove_prefix(1);
        while (!group.empty() && std::isspace(static_cast<unsigned char>(group.back()))) group.remove_suffix(1);
        if (group.empty()) throw std::invalid_argument("encoding scheme: empty group");
        std::size_t i = 0;
        while (i < group.size() && std::isdigit(static_cast<unsigned char>(group[i]))) ++i;
        if (i == 0 || i == group.size())
            throw std::invalid_argument("encoding group must look like <count><AXIS>: " + std::string(group));
        int count = std::stoi(std::string(group.substr(0, i)));
        GateKind axis = gate_from_name(group.substr(i));
        if (axis != GateKind::RX && axis != GateKind::RY && axis != GateKind::RZ)
            throw std::invalid_argument("encoding axis must be RX/RY/RZ");
        if (count < 1 || count > num_qubits)
            throw std::invalid_argument("encoding group count exceeds qubit count");
        for (int q = 0; q < count; ++q) scheme.entries.push_back({axis, q});
        pos = end + 1;
    }
    if (scheme.entries.empty()) throw std::invalid_argument("empty encoding scheme");
    return scheme;
}

std::string EncodingScheme::to_string() const {
    // Re-group consecutive runs of the same axis starting at qubit 0.
    std::string out;
    std::size_t i = 0;
    while (i < entries.size()) {
        GateKind axis = entries[i].axis;
        std::size_t j = i;
        int expect_q = 0;
        while (j < entries.size() && entries[j].axis == axis && entries[j].qubit == expect_q) {
            ++j;
            ++expect_q;
        }
        if (j == i) throw std::invalid_argument("encoding scheme not in canonical group form");
        if (!out.empty()) out += ",";
        out += std::to_string(j - i);
        out += gate_name(axis);
        i = j;
    }
    return out;
}

}  // namespace qas
