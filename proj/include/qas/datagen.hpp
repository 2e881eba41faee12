#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qas/circuit.hpp"
#include "qas/linalg.hpp"
#include "qas/statevector.hpp"

namespace qas {

// Feature matrix + labels + encoding + split index lists. One structure
// serves both angle-encoded classical data and amplitude-direct quantum data.
struct Dataset {
    std::vector<std::vector<double>> features;
    std::vector<int> labels;
    int num_classes = 0;
    EncodingScheme encoding;         // ignored when amplitude_encoding
    bool amplitude_encoding = false; // feature row is the statevector itself
    std::vector<std::size_t> train_idx, val_idx, test_idx;

    std::size_t size() const { return features.size(); }
    std::size_t feature_dim() const { return features.empty() ? 0 : features[0].size(); }
    int num_qubits() const;

    void validate() const;  // disjoint splits, labels < num_classes, rectangular features
    StateVector encode_row(std::size_t row) const;
    std::vector<StateVector> encode_rows(std::span<const std::size_t> rows) const;

    // Rows used to draw scoring/training batches from: train split when set,
    // every row otherwise.
    std::vector<std::size_t> pool_indices() const;
};

struct CsvSchema {
    int num_classes = 0;  // 0: infer as max label + 1
};

// "label,f1,f2,..." rows; a first line whose leading cell is not numeric is
// treated as a header. Malformed rows are rejected with their line number.
Dataset load_csv(const std::string& path, const CsvSchema& schema = {});
void save_csv(const Dataset& dataset, const std::string& path);

// Dataset manifest: key=value file with csv=, classes=, encoding= (scheme
// string or "amplitude"), split.train=a:b, split.val=a:b, split.test=a:b.
Dataset load_dataset_manifest(const std::string& path);
void write_dataset_manifest(const std::string& path, const std::string& csv_name,
                            const Dataset& dataset);

// Block-mean downsampling, row-major output. When h % oh or w % ow is
// nonzero the trailing blocks absorb the remainder rows/columns.
std::vector<double> avg_pool(std::span<const double> image, int h, int w, int oh, int ow);

enum class SynthKind { two_blobs, xor_rings, four_blobs };
SynthKind synth_kind_from_name(std::string_view name);

// Self-contained classification tasks with features in [0, pi] (directly
// usable as rotation angles), balanced classes, stratified 70/30 split.
// `dim` widens two_blobs to more features; xor_rings/four_blobs are 2-D.
Dataset synth_dataset(SynthKind kind, int n, double noise, std::uint64_t seed, int dim = 2);

// H(J1,J2) = sum_j (Z_j - J1 X_j X_{j+1} - J2 X_{j-1} Z_j X_{j+1}),
// periodic indices mod num_sites.
struct ClusterHamiltonianSpec {
    int num_sites = 2;
    double j1 = 0.0;
    double j2 = 0.0;
};

// Dense real-symmetric matrix in the computational basis, 2^N x 2^N.
// Throws for num_sites < 2 or > 12 (dense feasibility bound).
SymMatrix build_cluster_hamiltonian(const ClusterHamiltonianSpec& spec);

struct QprPoint {
    double j1 = 0.0;
    double j2 = 0.0;
    int label = 0;
};

struct QprResult {
    Dataset dataset;  // amplitude-direct ground states, one row per sample
    std::vector<double> ground_energies;  // per generated row
    std::vector<bool> degenerate;         // gap below 1e-10 at that row
};

// Ground states of the cluster Hamiltonian across a coupling grid. Sign
// convention: first amplitude above 1e-12 in magnitude is made positive.
QprResult qpr_dataset(std::span<const QprPoint> points, int num_sites, int per_spec = 1);

// "j1,j2,label" per line, '#' comments and an optional header allowed.
std::vector<QprPoint> load_qpr_grid(const std::string& path);

}  // namespace qas
