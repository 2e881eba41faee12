#include "qas/archio.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qas/kvio.hpp"

namespace qas {

std::string format_architecture(const CircuitArchitecture& arch) {
    std::ostringstream out;
    out << "qubits=" << arch.num_qubits << " params=" << arch.param_count << '\n';
    for (const auto& g : arch.gates) {
        out << gate_name(g.kind) << ' ' << g.qubits[0];
        if (gate_arity(g.kind) == 2) out << ',' << g.qubits[1];
        if (gate_param_count(g.kind) > 0) {
            if (g.trainable()) {
                out << " @" << g.param_offset;
            } else {
                for (double a : g.fixed_angles) out << ' ' << format_double(a);
            }
        }
        out << '\n';
    }
    return out.str();
}

CircuitArchitecture parse_architecture(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("architecture file is empty");
    int qubits = 0, params = 0;
    if (std::sscanf(line.c_str(), "qubits=%d params=%d", &qubits, &params) != 2)
        throw std::runtime_error("architecture header must be 'qubits=<d> params=<p>'");
    CircuitArchitecture arch = CircuitArchitecture::empty(qubits);
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string kind_text, qubit_text;
        if (!(ls >> kind_text >> qubit_text))
            throw std::runtime_error("architecture line " + std::to_string(line_no) + ": malformed");
        GateKind kind = gate_from_name(kind_text);
        int q0 = 0, q1 = -1;
        auto comma = qubit_text.find(',');
        if (comma == std::string::npos) {
            q0 = std::stoi(qubit_text);
        } else {
            q0 = std::stoi(qubit_text.substr(0, comma));
            q1 = std::stoi(qubit_text.substr(comma + 1));
        }
        if ((gate_arity(kind) == 2) != (q1 >= 0))
            throw std::runtime_error("architecture line " + std::to_string(line_no) +
                                     ": qubit list does not match gate arity");
        const int np = gate_param_count(kind);
        std::string tok;
        if (np == 0) {
            if (ls >> tok)
                throw std::runtime_error("architecture line " + std::to_string(line_no) +
                                         ": unexpected token after parameter-free gate");
            arch.append(kind, q0, q1);
            continue;
        }
        if (!(ls >> tok))
            throw std::runtime_error("architecture line " + std::to_string(line_no) +
                                     ": missing parameter field");
        if (tok[0] == '@') {
            int offset = std::stoi(tok.substr(1));
            arch.append(kind, q0, q1);
            if (arch.gates.back().param_offset != offset)
                throw std::runtime_error("architecture line " + std::to_string(line_no) +
                                         ": parameter offset out of order");
        } else {
            std::vector<double> angles;
            angles.push_back(std::stod(tok));
            while (static_cast<int>(angles.size()) < np) {
                if (!(ls >> tok))
                    throw std::runtime_error("architecture line " + std::to_string(line_no) +
                                             ": missing fixed angle");
                angles.push_back(std::stod(tok));
            }
            arch.append_fixed(kind, std::move(angles), q0, q1);
        }
        if (ls >> tok)
            throw std::runtime_error("architecture line " + std::to_string(line_no) +
                                     ": trailing token");
    }
    if (arch.param_count != params)
        throw std::runtime_error("architecture header param count does not match gates");
    arch.validate();
    return arch;
}

void write_architecture(const CircuitArchitecture& arch, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write architecture file: " + path);
    out << format_architecture(arch);
}

CircuitArchitecture read_architecture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open architecture file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_architecture(buf.str());
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void write_search_trace_csv(const std::string& path, const std::vector<SearchTraceRow>& rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write trace csv: " + path);
    out << "fe,ames,lambda_min,p_c,depth,gates\n";
    for (const auto& r : rows) {
        out << r.fe << ',' << format_double(r.ames) << ',' << format_double(r.lambda_min) << ','
            << r.param_count << ',' << r.depth << ',' << r.gates << '\n';
    }
}

void write_loss_curve_csv(const std::string& path, const std::vector<double>& curve) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write loss curve: " + path);
    out << "epoch,loss\n";
    for (std::size_t i = 0; i < curve.size(); ++i)
        out << i << ',' << format_double(curve[i]) << '\n';
}

void write_params(const std::string& path, const std::vector<double>& params) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write parameter file: " + path);
    for (double p : params) out << format_double(p) << '\n';
}

std::vector<double> read_params(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open parameter file: " + path);
    std::vector<double> params;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        params.push_back(std::stod(line));
    }
    return params;
}

}  // namespace qas
