#pragma once

#include <cstdint>
#include <span>

namespace actp {

// Small deterministic generator (splitmix64 stream). We avoid the standard
// distributions because their output is implementation-defined; every draw
// here is reproducible across platforms and standard libraries.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform integer in [0, bound). Modulo bias is negligible for the small
    // bounds used here and keeps the draw count per call fixed.
    std::uint64_t next_below(std::uint64_t bound) { return next_u64() % bound; }

    // Sample an index from an (unnormalized is fine) non-negative weight
    // vector by inverse transform; the last positive entry absorbs rounding.
    std::size_t sample_discrete(std::span<const double> weights) {
        double total = 0.0;
        for (double w : weights) total += w;
        double u = next_double() * total;
        std::size_t last_positive = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] <= 0.0) continue;
            last_positive = i;
            if (u < weights[i]) return i;
            u -= weights[i];
        }
        return last_positive;
    }

    // Derive an independent stream, e.g. one per episode.
    Rng fork(std::uint64_t salt) {
        Rng child(state_ ^ (0xD1B54A32D192ED03ULL * (salt + 1)));
        child.next_u64();
        return child;
    }

  private:
    std::uint64_t state_;
};

}  // namespace actp
