#pragma once

#include <string>

#include "qas/circuit.hpp"
#include "qas/mcts.hpp"
#include "qas/trainer.hpp"

namespace qas {

// Line-oriented circuit file, bit-exact round trip:
//   qubits=<d> params=<p>
//   KIND q0[,q1] [@param_offset | angle...]
// Trainable gates carry @offset; fixed gates list their constant angles.
std::string format_architecture(const CircuitArchitecture& arch);
CircuitArchitecture parse_architecture(const std::string& text);
void write_architecture(const CircuitArchitecture& arch, const std::string& path);
CircuitArchitecture read_architecture(const std::string& path);

// Report writers; all floating-point fields use shortest-round-trip form.
void write_search_trace_csv(const std::string& path,
                            const std::vector<SearchTraceRow>& rows);
void write_loss_curve_csv(const std::string& path, const std::vector<double>& curve);
void write_params(const std::string& path, const std::vector<double>& params);
std::vector<double> read_params(const std::string& path);

}  // namespace qas
