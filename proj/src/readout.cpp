#include "qas/readout.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace qas {

void ReadoutSpec::validate(int num_qubits) const {
    if (class_groups.size() < 2) throw std::invalid_argument("readout needs >= 2 classes");
    std::set<int> seen;
    for (const auto& group : class_groups) {
        if (group.empty()) throw std::invalid_argument("readout group is empty");
        for (int q : group) {
            if (q < 0 || q >= num_qubits) throw std::invalid_argument("readout references missing qubit");
            if (!seen.insert(q).second) throw std::invalid_argument("qubit appears in two readout groups");
        }
    }
}

std::vector<PauliObservable> ReadoutSpec::observables(int num_qubits) const {
    std::vector<PauliObservable> obs;
    for (const auto& group : class_groups)
        for (int q : group) obs.push_back(PauliObservable::single_z(q, num_qubits));
    return obs;
}

ReadoutSpec ReadoutSpec::parse(std::string_view text) {
    ReadoutSpec spec;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('|', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view group = text.substr(pos, end - pos);
        std::vector<int> qubits;
        std::size_t gpos = 0;
        while (gpos < group.size()) {
            std::size_t gend = group.find(',', gpos);
            if (gend == std::string_view::npos) gend = group.size();
            qubits.push_back(std::stoi(std::string(group.substr(gpos, gend - gpos))));
            gpos = gend + 1;
        }
        if (qubits.empty()) throw std::invalid_argument("readout: empty class group");
        spec.class_groups.push_back(std::move(qubits));
        if (end == text.size()) break;
        pos = end + 1;
    }
    return spec;
}

std::string ReadoutSpec::to_string() const {
    std::string out;
    for (std::size_t g = 0; g < class_groups.size(); ++g) {
        if (g) out += '|';
        for (std::size_t i = 0; i < class_groups[g].size(); ++i) {
            if (i) out += ',';
            out += std::to_string(class_groups[g][i]);
        }
    }
    return out;
}

ReadoutSpec ReadoutSpec::paired_binary(int num_qubits) {
    if (num_qubits < 2) throw std::invalid_argument("paired_binary needs >= 2 qubits");
    ReadoutSpec spec;
    std::vector<int> lo, hi;
    for (int q = 0; q < num_qubits / 2; ++q) lo.push_back(q);
    for (int q = num_qubits / 2; q < num_qubits; ++q) hi.push_back(q);
    spec.class_groups = {lo, hi};
    return spec;
}

ReadoutSpec ReadoutSpec::one_per_qubit(int num_classes) {
    ReadoutSpec spec;
    for (int c = 0; c < num_classes; ++c) spec.class_groups.push_back({c});
    return spec;
}

std::vector<double> class_scores(const StateVector& state, const ReadoutSpec& readout) {
    readout.validate(state.num_qubits);
    std::vector<double> scores;
    scores.reserve(readout.class_groups.size());
    for (const auto& group : readout.class_groups) {
        double s = 0.0;
        for (int q : group) s += expectation(state, PauliObservable::single_z(q, state.num_qubits));
        scores.push_back(s);
    }
    return scores;
}

std::vector<double> softmax(std::span<const double> scores) {
    double mx = *std::max_element(scores.begin(), scores.end());
    std::vector<double> probs(scores.size());
    double z = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        probs[i] = std::exp(scores[i] - mx);
        z += probs[i];
    }
    for (auto& p : probs) p /= z;
    return probs;
}

std::vector<double> predict(const CircuitArchitecture& arch, std::span<const double> params,
                            std::span<const double> input, const EncodingScheme& scheme,
                            const ReadoutSpec& readout) {
    StateVector state = encode(input, scheme, arch.num_qubits);
    run_circuit_inplace(arch, params, state);
    return softmax(class_scores(state, readout));
}

std::vector<double> predict_state(const CircuitArchitecture& arch, std::span<const double> params,
                                  const StateVector& input, const ReadoutSpec& readout) {
    StateVector state = run_circuit(arch, params, input);
    return softmax(class_scores(state, readout));
}

}  // namespace qas
