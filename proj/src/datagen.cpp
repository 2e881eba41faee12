#include "qas/datagen.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include "qas/kvio.hpp"
#include "qas/rng.hpp"

namespace qas {

int Dataset::num_qubits() const {
    if (amplitude_encoding) {
        std::size_t dim = feature_dim();
        int d = 0;
        while ((std::size_t{1} << d) < dim) ++d;
        if ((std::size_t{1} << d) != dim)
            throw std::invalid_argument("amplitude dataset dimension is not a power of two");
        return d;
    }
    int d = 0;
    for (const auto& e : encoding.entries) d = std::max(d, e.qubit + 1);
    if (d == 0) throw std::invalid_argument("dataset has no encoding");
    return d;
}

void Dataset::validate() const {
    for (const auto& row : features)
        if (row.size() != feature_dim()) throw std::invalid_argument("ragged feature matrix");
    if (labels.size() != features.size()) throw std::invalid_argument("label count mismatch");
    for (int y : labels)
        if (y < 0 || y >= num_classes) throw std::invalid_argument("label out of class range");
    std::set<std::size_t> seen;
    for (const auto* split : {&train_idx, &val_idx, &test_idx}) {
        for (std::size_t i : *split) {
            if (i >= size()) throw std::invalid_argument("split index out of range");
            if (!seen.insert(i).second) throw std::invalid_argument("index appears in two splits");
        }
    }
    if (!amplitude_encoding && !encoding.entries.empty() &&
        encoding.feature_count() != feature_dim())
        throw std::invalid_argument("encoding entry count != feature dimension");
}

StateVector Dataset::encode_row(std::size_t row) const {
    if (row >= size()) throw std::invalid_argument("encode_row: index out of range");
    if (amplitude_encoding) {
        StateVector s;
        s.num_qubits = num_qubits();
        s.amp.reserve(features[row].size());
        for (double v : features[row]) s.amp.emplace_back(v, 0.0);
        return s;
    }
    return encode(features[row], encoding, num_qubits());
}

std::vector<StateVector> Dataset::encode_rows(std::span<const std::size_t> rows) const {
    std::vector<StateVector> states;
    states.reserve(rows.size());
    for (std::size_t r : rows) states.push_back(encode_row(r));
    return states;
}

std::vector<std::size_t> Dataset::pool_indices() const {
    if (!train_idx.empty()) return train_idx;
    std::vector<std::size_t> all(size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
}

namespace {

bool parse_double(const std::string& cell, double& out) {
    try {
        std::size_t used = 0;
        out = std::stod(cell, &used);
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        return used == cell.size();
    } catch (...) {
        return false;
    }
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
}

}  // namespace

Dataset load_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open csv file: " + path);
    Dataset ds;
    std::string line;
    int line_no = 0;
    std::size_t expected_cols = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_csv_line(line);
        if (cells.empty()) continue;
        double label_val = 0.0;
        if (!parse_double(cells[0], label_val)) {
            if (line_no == 1) continue;  // header
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": non-numeric label");
        }
        if (cells.size() < 2)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": row has no features");
        if (expected_cols == 0) expected_cols = cells.size();
        if (cells.size() != expected_cols)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": inconsistent column count");
        int label = static_cast<int>(label_val);
        if (label < 0 || static_cast<double>(label) != label_val)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": label is not a nonnegative integer");
        std::vector<double> row;
        row.reserve(cells.size() - 1);
        for (std::size_t i = 1; i < cells.size(); ++i) {
            double v = 0.0;
            if (!parse_double(cells[i], v))
                throw std::runtime_error(path + ":" + std::to_string(line_no) + ": non-numeric feature in column " + std::to_string(i + 1));
            row.push_back(v);
        }
        ds.features.push_back(std::move(row));
        ds.labels.push_back(label);
    }
    if (ds.features.empty()) throw std::runtime_error("csv has no data rows: " + path);
    int max_label = *std::max_element(ds.labels.begin(), ds.labels.end());
    ds.num_classes = schema.num_classes > 0 ? schema.num_classes : max_label + 1;
    if (max_label >= ds.num_classes)
        throw std::runtime_error(path + ": label exceeds declared class count");
    return ds;
}

void save_csv(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write csv file: " + path);
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        out << dataset.labels[i];
        for (double v : dataset.features[i]) out << ',' << format_double(v);
        out << '\n';
    }
}

namespace {

std::vector<std::size_t> parse_range(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::runtime_error("split range must be start:end");
    std::size_t a = std::stoull(text.substr(0, colon));
    std::size_t b = std::stoull(text.substr(colon + 1));
    if (b < a) throw std::runtime_error("split range end before start");
    std::vector<std::size_t> idx(b - a);
    for (std::size_t i = a; i < b; ++i) idx[i - a] = i;
    return idx;
}

}  // namespace

Dataset load_dataset_manifest(const std::string& path) {
    auto kv = parse_kv_file(path);
    auto need = [&](const char* key) {
        auto it = kv.find(key);
        if (it == kv.end()) throw std::runtime_error(path + ": manifest missing key " + key);
        return it->second;
    };
    std::filesystem::path csv_path(need("csv"));
    if (csv_path.is_relative()) csv_path = std::filesystem::path(path).parent_path() / csv_path;
    CsvSchema schema;
    if (kv.count("classes")) schema.num_classes = std::stoi(kv.at("classes"));
    Dataset ds = load_csv(csv_path.string(), schema);
    std::string enc = need("encoding");
    if (enc == "amplitude") {
        ds.amplitude_encoding = true;
    } else {
        ds.amplitude_encoding = false;
        // qubit count bound comes from the largest group in the scheme text
        int max_count = 0;
        for (const auto& e : EncodingScheme::parse(enc, 1 << 20).entries)
            max_count = std::max(max_count, e.qubit + 1);
        ds.encoding = EncodingScheme::parse(enc, max_count);
        if (ds.encoding.feature_count() != ds.feature_dim())
            throw std::runtime_error(path + ": encoding entry count != csv feature count");
    }
    if (kv.count("split.train")) ds.train_idx = parse_range(kv.at("split.train"));
    if (kv.count("split.val")) ds.val_idx = parse_range(kv.at("split.val"));
    if (kv.count("split.test")) ds.test_idx = parse_range(kv.at("split.test"));
    ds.validate();
    return ds;
}

void write_dataset_manifest(const std::string& path, const std::string& csv_name,
                            const Dataset& dataset) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path);
    out << "csv=" << csv_name << '\n';
    out << "classes=" << dataset.num_classes << '\n';
    out << "encoding=" << (dataset.amplitude_encoding ? "amplitude" : dataset.encoding.to_string())
        << '\n';
    auto write_split = [&out](const char* key, const std::vector<std::size_t>& idx) {
        if (idx.empty()) return;
        // contiguous ranges only; datasets built here always satisfy this
        for (std::size_t i = 1; i < idx.size(); ++i)
            if (idx[i] != idx[i - 1] + 1) throw std::runtime_error("non-contiguous split range");
        out << key << '=' << idx.front() << ':' << idx.back() + 1 << '\n';
    };
    write_split("split.train", dataset.train_idx);
    write_split("split.val", dataset.val_idx);
    write_split("split.test", dataset.test_idx);
}

std::vector<double> avg_pool(std::span<const double> image, int h, int w, int oh, int ow) {
    if (h < 1 || w < 1 || oh < 1 || ow < 1 || oh > h || ow > w)
        throw std::invalid_argument("avg_pool: bad dimensions");
    if (static_cast<int>(image.size()) != h * w)
        throw std::invalid_argument("avg_pool: image size mismatch");
    const int bh = h / oh, bw = w / ow;
    std::vector<double> out(static_cast<std::size_t>(oh) * ow, 0.0);
    for (int r = 0; r < oh; ++r) {
        int r0 = r * bh;
        int r1 = (r == oh - 1) ? h : r0 + bh;
        for (int c = 0; c < ow; ++c) {
            int c0 = c * bw;
            int c1 = (c == ow - 1) ? w : c0 + bw;
            double acc = 0.0;
            for (int i = r0; i < r1; ++i)
                for (int j = c0; j < c1; ++j) acc += image[static_cast<std::size_t>(i) * w + j];
            out[static_cast<std::size_t>(r) * ow + c] = acc / ((r1 - r0) * (c1 - c0));
        }
    }
    return out;
}

SynthKind synth_kind_from_name(std::string_view name) {
    if (name == "two_blobs") return SynthKind::two_blobs;
    if (name == "xor_rings") return SynthKind::xor_rings;
    if (name == "four_blobs") return SynthKind::four_blobs;
    throw std::invalid_argument("unknown synthetic dataset kind: " + std::string(name));
}

namespace {

void stratified_split(Dataset& ds) {
    // per class: first ~70% of its rows (in index order) train, rest test
    std::vector<std::vector<std::size_t>> by_class(ds.num_classes);
    for (std::size_t i = 0; i < ds.size(); ++i) by_class[ds.labels[i]].push_back(i);
    for (const auto& members : by_class) {
        std::size_t cut = (members.size() * 7 + 9) / 10;
        for (std::size_t i = 0; i < members.size(); ++i)
            (i < cut ? ds.train_idx : ds.test_idx).push_back(members[i]);
    }
    std::sort(ds.train_idx.begin(), ds.train_idx.end());
    std::sort(ds.test_idx.begin(), ds.test_idx.end());
}

double clip_angle(double v) { return std::clamp(v, 0.0, std::numbers::pi); }

}  // namespace

Dataset synth_dataset(SynthKind kind, int n, double noise, std::uint64_t seed, int dim) {
    const double lo = std::numbers::pi / 4, hi = 3 * std::numbers::pi / 4;
    Dataset ds;
    Rng rng(derive_seed(seed, "synth"));
    switch (kind) {
        case SynthKind::two_blobs: {
            if (dim < 1) throw std::invalid_argument("two_blobs: dim must be >= 1");
            ds.num_classes = 2;
            if (n < ds.num_classes * 10) throw std::invalid_argument("synth_dataset: n too small");
            for (int i = 0; i < n; ++i) {
                int label = i % 2;
                std::vector<double> row(dim);
                for (int k = 0; k < dim; ++k)
                    row[k] = clip_angle((label == 0 ? lo : hi) + noise * rng.normal());
                ds.features.push_back(std::move(row));
                ds.labels.push_back(label);
            }
            ds.encoding = EncodingScheme::parse(std::to_string(dim) + "RY", dim);
            break;
        }
        case SynthKind::xor_rings: {
            // four corner blobs, label = quadrant parity (XOR layout)
            ds.num_classes = 2;
            if (n < ds.num_classes * 10) throw std::invalid_argument("synth_dataset: n too small");
            const double cx[4] = {lo, hi, lo, hi};
            const double cy[4] = {lo, hi, hi, lo};  // blobs 0,1: class 0; 2,3: class 1
            for (int i = 0; i < n; ++i) {
                int label = i % 2;
                int blob = label == 0 ? (i / 2) % 2 : 2 + (i / 2) % 2;
                ds.features.push_back({clip_angle(cx[blob] + noise * rng.normal()),
                                       clip_angle(cy[blob] + noise * rng.normal())});
                ds.labels.push_back(label);
            }
            ds.encoding = EncodingScheme::parse("2RY", 2);
            break;
        }
        case SynthKind::four_blobs: {
            ds.num_classes = 4;
            if (n < ds.num_classes * 10) throw std::invalid_argument("synth_dataset: n too small");
            const double cx[4] = {lo, hi, lo, hi};
            const double cy[4] = {lo, lo, hi, hi};
            for (int i = 0; i < n; ++i) {
                int label = i % 4;
                ds.features.push_back({clip_angle(cx[label] + noise * rng.normal()),
                                       clip_angle(cy[label] + noise * rng.normal())});
                ds.labels.push_back(label);
            }
            ds.encoding = EncodingScheme::parse("2RY", 2);
            break;
        }
    }
    stratified_split(ds);
    ds.validate();
    return ds;
}

SymMatrix build_cluster_hamiltonian(const ClusterHamiltonianSpec& spec) {
    const int n = spec.num_sites;
    if (n < 2) throw std::invalid_argument("cluster hamiltonian needs >= 2 sites");
    if (n > 12) throw std::invalid_argument("cluster hamiltonian: num_sites too large for dense mode");
    const std::size_t dim = std::size_t{1} << n;
    SymMatrix h = SymMatrix::zeros(dim);

    // Terms as (coeff, xmask, zmask); X factors on the same site cancel via
    // xor, which handles the N=2 wrap where X_{j-1} and X_{j+1} coincide.
    struct Term { double coeff; std::size_t xmask, zmask; };
    std::vector<Term> terms;
    for (int j = 0; j < n; ++j) {
        int prev = (j - 1 + n) % n;
        int next = (j + 1) % n;
        terms.push_back({1.0, 0, std::size_t{1} << j});
        if (spec.j1 != 0.0)
            terms.push_back({-spec.j1, (std::size_t{1} << j) ^ (std::size_t{1} << next), 0});
        if (spec.j2 != 0.0)
            terms.push_back({-spec.j2, (std::size_t{1} << prev) ^ (std::size_t{1} << next),
                             std::size_t{1} << j});
    }
    for (const auto& t : terms) {
        for (std::size_t b = 0; b < dim; ++b) {
            double sign = (std::popcount(b & t.zmask) & 1) ? -1.0 : 1.0;
            h.at(b ^ t.xmask, b) += t.coeff * sign;
        }
    }
    return h;
}

namespace {

// Ground pair of a real symmetric matrix with the fixed sign convention.
struct GroundState {
    double energy;
    std::vector<double> vec;
    bool degenerate;
};

GroundState ground_state(const SymMatrix& h) {
    SymmetricEigen eig = symmetric_eigen(h);
    GroundState g;
    g.energy = eig.eigenvalues[0];
    g.vec = eig.eigenvectors[0];
    g.degenerate = eig.eigenvalues.size() > 1 && (eig.eigenvalues[1] - eig.eigenvalues[0]) < 1e-10;
    for (double v : g.vec) {
        if (std::abs(v) > 1e-12) {
            if (v < 0)
                for (double& x : g.vec) x = -x;
            break;
        }
    }
    return g;
}

}  // namespace

QprResult qpr_dataset(std::span<const QprPoint> points, int num_sites, int per_spec) {
    if (points.empty()) throw std::invalid_argument("qpr_dataset: empty grid");
    if (per_spec < 1) throw std::invalid_argument("qpr_dataset: per_spec must be >= 1");
    QprResult result;
    result.dataset.amplitude_encoding = true;
    int max_label = 0;
    for (const auto& pt : points) {
        ClusterHamiltonianSpec spec{num_sites, pt.j1, pt.j2};
        SymMatrix h = build_cluster_hamiltonian(spec);
        GroundState g = ground_state(h);
        for (int rep = 0; rep < per_spec; ++rep) {
            result.dataset.features.push_back(g.vec);
            result.dataset.labels.push_back(pt.label);
            result.ground_energies.push_back(g.energy);
            result.degenerate.push_back(g.degenerate);
        }
        max_label = std::max(max_label, pt.label);
    }
    result.dataset.num_classes = max_label + 1;
    result.dataset.train_idx.resize(result.dataset.size());
    for (std::size_t i = 0; i < result.dataset.size(); ++i) result.dataset.train_idx[i] = i;
    result.dataset.validate();
    return result;
}

std::vector<QprPoint> load_qpr_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open grid file: " + path);
    std::vector<QprPoint> points;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_csv_line(line);
        if (cells.size() != 3)
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected j1,j2,label");
        QprPoint pt;
        double lab = 0.0;
        if (!parse_double(cells[0], pt.j1) || !parse_double(cells[1], pt.j2) ||
            !parse_double(cells[2], lab)) {
            if (line_no == 1) continue;  // header
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": non-numeric cell");
        }
        pt.label = static_cast<int>(lab);
        points.push_back(pt);
    }
    if (points.empty()) throw std::runtime_error("grid file has no rows: " + path);
    return points;
}

}  // namespace qas
