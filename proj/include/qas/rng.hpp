#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace qas {

// Deterministic random source. All sampling goes through these helpers rather
// than std::*_distribution so that identical seeds give identical streams on
// any toolchain.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller, second value cached.
    double normal();

    // Uniform integer in [lo, hi], inclusive. Unbiased via mask rejection.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    // k distinct indices from {0, ..., n-1}, returned ascending.
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

  private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Named substream derivation: one master seed fans out to independent,
// reproducible component streams ("search", "init", "data", ...).
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream, std::uint64_t index);

}  // namespace qas
