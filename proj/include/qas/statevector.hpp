#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qas/circuit.hpp"
#include "qas/pauli.hpp"

namespace qas {

using Complex = std::complex<double>;

// Dense 2^d amplitude vector, little-endian: qubit 0 is the least
// significant bit of the amplitude index.
struct StateVector {
    int num_qubits = 0;
    std::vector<Complex> amp;

    static StateVector zero(int num_qubits);  // |0...0>

    std::size_t dim() const { return amp.size(); }
    double norm_sq() const;
};

// In-place gate action. `angles` supplies gate_param_count(kind) values for
// trainable gates; fixed gates read their stored constants and ignore it.
// Conventions (bit-exact):
//   RA(phi)  = exp(-i phi sigma_A / 2)
//   U3(t,p,l)= [[cos(t/2), -e^{il} sin(t/2)], [e^{ip} sin(t/2), e^{i(p+l)} cos(t/2)]]
//   CU3      = U3 on target when control is |1>
//   AA(phi)  = exp(-i phi sigma_A (x) sigma_A / 2), AA in {XX, YY, ZZ}
//   CNOT     = parameter-free
void apply_gate(StateVector& state, const GateInstance& gate, std::span<const double> angles);

// Convenience: returns the gate applied to a copy.
StateVector applied_gate(const StateVector& state, const GateInstance& gate,
                         std::span<const double> angles);

// F(x): starts from |0>^d and applies one rotation per feature, in scheme
// order, with angle = feature value.
StateVector encode(std::span<const double> features, const EncodingScheme& scheme, int num_qubits);

// U(theta) applied gate-by-gate in list order. params length must equal
// arch.param_count; fixed-angle gates use their stored constants.
StateVector run_circuit(const CircuitArchitecture& arch, std::span<const double> params,
                        const StateVector& state);
void run_circuit_inplace(const CircuitArchitecture& arch, std::span<const double> params,
                         StateVector& state);

// M|psi> for a Pauli string (one pass over amplitudes).
StateVector apply_pauli(const StateVector& state, const PauliObservable& obs);

// <psi|M|psi>, real, in [-1, 1].
double expectation(const StateVector& state, const PauliObservable& obs);

// <a|b>
Complex inner_product(const StateVector& a, const StateVector& b);

// <a|M|b>
Complex matrix_element(const StateVector& a, const PauliObservable& obs, const StateVector& b);

}  // namespace qas
