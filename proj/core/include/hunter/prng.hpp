#pragma once
// SplitMix64-based deterministic random stream.
//
// Every randomized component in the pipeline draws from this generator so
// that a (seed, stream tag) pair reproduces bit-identical output on any
// platform. std:: distributions are implementation-defined and are not used.

#include <cstdint>
#include <string_view>
#include <vector>

namespace hunter {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1) with 53 bits of mantissa.
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, n) by rejection; total for n > 0.
    std::uint64_t next_below(std::uint64_t n);

    // Uniform real on [lo, hi].
    double next_range(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

    // Standard normal via Box-Muller (one value per call; spare cached).
    double next_normal();

    // Derive an independent substream for a named component.
    SplitMix64 fork(std::string_view tag) const;

private:
    std::uint64_t state_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

// Stable 64-bit FNV-1a; the project-wide content hash.
std::uint64_t fnv1a64(std::string_view bytes);

// In-place Fisher-Yates using next_below; deterministic given the stream.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, SplitMix64& rng) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.next_below(i));
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace hunter
