#include "qas/statevector.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "qas/pauli.hpp"

namespace qas {

bool PauliObservable::is_identity() const {
    for (auto f : factors)
        if (f != PauliFactor::I) return false;
    return true;
}

bool PauliObservable::diagonal() const {
    for (auto f : factors)
        if (f == PauliFactor::X || f == PauliFactor::Y) return false;
    return true;
}

PauliObservable PauliObservable::single_z(int qubit, int num_qubits) {
    if (qubit < 0 || qubit >= num_qubits) throw std::invalid_argument("single_z: qubit out of range");
    PauliObservable obs;
    obs.factors.assign(num_qubits, PauliFactor::I);
    obs.factors[qubit] = PauliFactor::Z;
    return obs;
}

PauliObservable PauliObservable::parse(std::string_view text) {
    PauliObservable obs;
    for (char c : text) {
        switch (c) {
            case 'I': obs.factors.push_back(PauliFactor::I); break;
            case 'X': obs.factors.push_back(PauliFactor::X); break;
            case 'Y': obs.factors.push_back(PauliFactor::Y); break;
            case 'Z': obs.factors.push_back(PauliFactor::Z); break;
            default: throw std::invalid_argument("bad Pauli character");
        }
    }
    if (obs.factors.empty()) throw std::invalid_argument("empty Pauli string");
    return obs;
}

std::string PauliObservable::to_string() const {
    std::string s;
    for (auto f : factors) {
        switch (f) {
            case PauliFactor::I: s += 'I'; break;
            case PauliFactor::X: s += 'X'; break;
            case PauliFactor::Y: s += 'Y'; break;
            case PauliFactor::Z: s += 'Z'; break;
        }
    }
    return s;
}

StateVector StateVector::zero(int num_qubits) {
    if (num_qubits < 1 || num_qubits > 26) throw std::invalid_argument("bad qubit count");
    StateVector s;
    s.num_qubits = num_qubits;
    s.amp.assign(std::size_t{1} << num_qubits, Complex{0.0, 0.0});
    s.amp[0] = Complex{1.0, 0.0};
    return s;
}

double StateVector::norm_sq() const {
    double acc = 0.0;
    for (const auto& a : amp) acc += std::norm(a);
    return acc;
}

namespace {

// 2x2 matrices as row-major arrays.
using Mat2 = std::array<Complex, 4>;

Mat2 rx_matrix(double phi) {
    double c = std::cos(phi / 2), s = std::sin(phi / 2);
    return {Complex{c, 0}, Complex{0, -s}, Complex{0, -s}, Complex{c, 0}};
}

Mat2 ry_matrix(double phi) {
    double c = std::cos(phi / 2), s = std::sin(phi / 2);
    return {Complex{c, 0}, Complex{-s, 0}, Complex{s, 0}, Complex{c, 0}};
}

Mat2 rz_matrix(double phi) {
    return {std::polar(1.0, -phi / 2), Complex{0, 0}, Complex{0, 0}, std::polar(1.0, phi / 2)};
}

Mat2 u3_matrix(double theta, double phi, double lambda) {
    double c = std::cos(theta / 2), s = std::sin(theta / 2);
    const Complex eil{std::cos(lambda), std::sin(lambda)};
    const Complex eip{std::cos(phi), std::sin(phi)};
    const Complex eipl{std::cos(phi + lambda), std::sin(phi + lambda)};
    return {Complex{c, 0}, -s * eil, s * eip, c * eipl};
}

void apply_1q(StateVector& state, int q, const Mat2& u) {
    const std::size_t n = state.dim();
    const std::size_t mask = std::size_t{1} << q;
    for (std::size_t i = 0; i < n; ++i) {
        if (i & mask) continue;
        Complex a = state.amp[i];
        Complex b = state.amp[i | mask];
        state.amp[i] = u[0] * a + u[1] * b;
        state.amp[i | mask] = u[2] * a + u[3] * b;
    }
}

void apply_controlled_1q(StateVector& state, int ctrl, int targ, const Mat2& u) {
    const std::size_t n = state.dim();
    const std::size_t mc = std::size_t{1} << ctrl;
    const std::size_t mt = std::size_t{1} << targ;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(i & mc) || (i & mt)) continue;
        Complex a = state.amp[i];
        Complex b = state.amp[i | mt];
        state.amp[i] = u[0] * a + u[1] * b;
        state.amp[i | mt] = u[2] * a + u[3] * b;
    }
}

// exp(-i phi/2 sigma(x)sigma) = cos(phi/2) I - i sin(phi/2) sigma(x)sigma.
void apply_two_pauli_rotation(StateVector& state, GateKind kind, int qa, int qb, double phi) {
    const std::size_t n = state.dim();
    const std::size_t ma = std::size_t{1} << qa;
    const std::size_t mb = std::size_t{1} << qb;
    const std::size_t both = ma | mb;
    const double c = std::cos(phi / 2), s = std::sin(phi / 2);
    if (kind == GateKind::ZZ) {
        // diagonal: phase exp(-i phi/2 * (+1)) on even parity, exp(+i phi/2) on odd
        const Complex even{c, -s}, odd{c, s};
        for (std::size_t i = 0; i < n; ++i) {
            bool parity = ((i >> qa) ^ (i >> qb)) & 1;
            state.amp[i] *= parity ? odd : even;
        }
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (i & ma) continue;  // visit each flip-pair once, from the qa=0 side
        std::size_t j = i ^ both;
        Complex a = state.amp[i];
        Complex b = state.amp[j];
        if (kind == GateKind::XX) {
            state.amp[i] = c * a + Complex{0, -s} * b;
            state.amp[j] = c * b + Complex{0, -s} * a;
        } else {  // YY: (Y(x)Y)|i> = -(-1)^(b_a+b_b) |i^both>
            // pair (i, j): i has qa=0; phases depend on each source's bits
            int bits_i = ((i >> qa) & 1) + ((i >> qb) & 1);
            int bits_j = ((j >> qa) & 1) + ((j >> qb) & 1);
            double ph_i = -((bits_i & 1) ? -1.0 : 1.0);
            double ph_j = -((bits_j & 1) ? -1.0 : 1.0);
            state.amp[j] = c * b + Complex{0, -s} * ph_i * a;
            state.amp[i] = c * a + Complex{0, -s} * ph_j * b;
        }
    }
}

void apply_cnot(StateVector& state, int ctrl, int targ) {
    const std::size_t n = state.dim();
    const std::size_t mc = std::size_t{1} << ctrl;
    const std::size_t mt = std::size_t{1} << targ;
    for (std::size_t i = 0; i < n; ++i) {
        if ((i & mc) && !(i & mt)) std::swap(state.amp[i], state.amp[i | mt]);
    }
}

}  // namespace

void apply_gate(StateVector& state, const GateInstance& gate, std::span<const double> angles) {
    const int want = gate_param_count(gate.kind);
    std::span<const double> a = gate.trainable() ? angles : std::span<const double>(gate.fixed_angles);
    if (static_cast<int>(a.size()) != want) throw std::invalid_argument("apply_gate: angle count mismatch");
    const int arity = gate_arity(gate.kind);
    for (int i = 0; i < arity; ++i) {
        if (gate.qubits[i] < 0 || gate.qubits[i] >= state.num_qubits)
            throw std::invalid_argument("apply_gate: qubit index out of range");
    }
    if (arity == 2 && gate.qubits[0] == gate.qubits[1])
        throw std::invalid_argument("apply_gate: duplicate qubit index");

    switch (gate.kind) {
        case GateKind::RX: apply_1q(state, gate.qubits[0], rx_matrix(a[0])); break;
        case GateKind::RY: apply_1q(state, gate.qubits[0], ry_matrix(a[0])); break;
        case GateKind::RZ: apply_1q(state, gate.qubits[0], rz_matrix(a[0])); break;
        case GateKind::U3: apply_1q(state, gate.qubits[0], u3_matrix(a[0], a[1], a[2])); break;
        case GateKind::CU3:
            apply_controlled_1q(state, gate.qubits[0], gate.qubits[1], u3_matrix(a[0], a[1], a[2]));
            break;
        case GateKind::XX:
        case GateKind::YY:
        case GateKind::ZZ:
            apply_two_pauli_rotation(state, gate.kind, gate.qubits[0], gate.qubits[1], a[0]);
            break;
        case GateKind::CNOT: apply_cnot(state, gate.qubits[0], gate.qubits[1]); break;
    }
}

StateVector applied_gate(const StateVector& state, const GateInstance& gate,
                         std::span<const double> angles) {
    StateVector out = state;
    apply_gate(out, gate, angles);
    return out;
}

StateVector encode(std::span<const double> features, const EncodingScheme& scheme, int num_qubits) {
    if (features.size() != scheme.feature_count())
        throw std::invalid_argument("encode: feature length does not match scheme");
    StateVector state = StateVector::zero(num_qubits);
    for (std::size_t i = 0; i < scheme.entries.size(); ++i) {
        GateInstance g;
        g.kind = scheme.entries[i].axis;
        g.qubits = {scheme.entries[i].qubit, 0};
        double angle = features[i];
        apply_gate(state, g, std::span<const double>(&angle, 1));
    }
    return state;
}

void run_circuit_inplace(const CircuitArchitecture& arch, std::span<const double> params,
                         StateVector& state) {
    if (static_cast<int>(params.size()) != arch.param_count)
        throw std::invalid_argument("run_circuit: parameter length mismatch");
    if (state.num_qubits != arch.num_qubits)
        throw std::invalid_argument("run_circuit: qubit count mismatch");
    for (const auto& g : arch.gates) {
        if (g.trainable()) {
            apply_gate(state, g, params.subspan(g.param_offset, gate_param_count(g.kind)));
        } else {
            apply_gate(state, g, {});
        }
    }
}

StateVector run_circuit(const CircuitArchitecture& arch, std::span<const double> params,
                        const StateVector& state) {
    StateVector out = state;
    run_circuit_inplace(arch, params, out);
    return out;
}

StateVector apply_pauli(const StateVector& state, const PauliObservable& obs) {
    if (obs.num_qubits() != state.num_qubits)
        throw std::invalid_argument("apply_pauli: dimension mismatch");
    const std::size_t n = state.dim();
    std::size_t xmask = 0;
    std::size_t ymask = 0;
    std::size_t zmask = 0;
    for (int q = 0; q < obs.num_qubits(); ++q) {
        switch (obs.factors[q]) {
            case PauliFactor::I: break;
            case PauliFactor::X: xmask |= std::size_t{1} << q; break;
            case PauliFactor::Y: xmask |= std::size_t{1} << q; ymask |= std::size_t{1} << q; break;
            case PauliFactor::Z: zmask |= std::size_t{1} << q; break;
        }
    }
    StateVector out;
    out.num_qubits = state.num_qubits;
    out.amp.assign(n, Complex{0, 0});
    const int ycount = std::popcount(ymask);
    // i^ycount cycles through {1, i, -1, -i}
    static const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    const Complex ybase = kIPow[ycount & 3];
    for (std::size_t i = 0; i < n; ++i) {
        // Y|b> = i(-1)^b |1-b>, Z|b> = (-1)^b |b>
        int sign_bits = std::popcount(i & (ymask | zmask));
        Complex coeff = ybase * ((sign_bits & 1) ? -1.0 : 1.0);
        out.amp[i ^ xmask] += coeff * state.amp[i];
    }
    return out;
}

double expectation(const StateVector& state, const PauliObservable& obs) {
    if (obs.num_qubits() != state.num_qubits)
        throw std::invalid_argument("expectation: dimension mismatch");
    if (obs.diagonal()) {
        std::size_t zmask = 0;
        for (int q = 0; q < obs.num_qubits(); ++q)
            if (obs.factors[q] == PauliFactor::Z) zmask |= std::size_t{1} << q;
        double acc = 0.0;
        for (std::size_t i = 0; i < state.dim(); ++i) {
            double p = std::norm(state.amp[i]);
            acc += (std::popcount(i & zmask) & 1) ? -p : p;
        }
        return acc;
    }
    StateVector mpsi = apply_pauli(state, obs);
    return inner_product(state, mpsi).real();
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
    Complex acc{0, 0};
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a.amp[i]) * b.amp[i];
    return acc;
}

Complex matrix_element(const StateVector& a, const PauliObservable& obs, const StateVector& b) {
    return inner_product(a, apply_pauli(b, obs));
}

}  // namespace qas
