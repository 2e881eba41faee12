#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace qas {

// Gate alphabet. Parameterized gates use half-angle convention
// exp(-i*phi*G/2); U3/CU3 take the standard (theta, phi, lambda) triple.
enum class GateKind { RX, RY, RZ, U3, CU3, XX, YY, ZZ, CNOT };

int gate_arity(GateKind kind);        // 1 or 2
int gate_param_count(GateKind kind);  // trainable angles per gate
bool gate_is_two_qubit(GateKind kind);
std::string_view gate_name(GateKind kind);
GateKind gate_from_name(std::string_view name);  // throws on unknown name

// One placed gate. Trainable gates reference a slice of the circuit's
// parameter vector via param_offset; encoding-style gates carry their
// constant angles instead (param_offset == kFixedAngles).
struct GateInstance {
    static constexpr int kFixedAngles = -1;

    GateKind kind = GateKind::RX;
    std::array<int, 2> qubits = {0, 0};  // [0] used for 1q; [0]=control/first for 2q
    int param_offset = 0;
    std::vector<double> fixed_angles;

    bool trainable() const { return param_offset != kFixedAngles; }
};

// Ordered gate list over num_qubits wires; the unit being searched, scored
// and trained. param_count is the number of trainable angles.
struct CircuitArchitecture {
    int num_qubits = 1;
    std::vector<GateInstance> gates;
    int param_count = 0;

    static CircuitArchitecture empty(int num_qubits);

    // Appends a trainable gate, assigning it the next free parameter slots.
    void append(GateKind kind, int q0, int q1 = -1);
    // Appends a gate with constant angles (not part of the parameter vector).
    void append_fixed(GateKind kind, std::vector<double> angles, int q0, int q1 = -1);

    int gate_count() const { return static_cast<int>(gates.size()); }

    // Rebuilds param offsets after structural edits (e.g. gate deletion) and
    // recomputes param_count. Trainable gates keep their relative order.
    void reindex_parameters();

    // Throws std::invalid_argument if any gate references a bad qubit, has a
    // wrong angle count, or offsets are inconsistent with param_count.
    void validate() const;
};

// Data-encoding map F(x): ordered (rotation axis, qubit) entries; feature i
// supplies the angle of entry i.
struct EncodingScheme {
    struct Entry {
        GateKind axis = GateKind::RY;  // RX, RY or RZ
        int qubit = 0;
    };
    std::vector<Entry> entries;

    std::size_t feature_count() const { return entries.size(); }

    // Parses the compact table notation, e.g. "4RY,4RZ,4RX,4RY": each group
    // <count><AXIS> places one rotation per qubit 0..count-1, in order.
    static EncodingScheme parse(std::string_view text, int num_qubits);
    std::string to_string() const;
};

}  // namespace qas
