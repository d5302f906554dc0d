#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "valprof/errors.hpp"

namespace valprof {

// Derives a child stream seed from (seed, tag). splitmix64 finalizer; the
// standard distributions are not portable across library implementations, so
// everything random in this project goes through RngStream below.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t tag) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Seeded random stream with explicit, implementation-independent mappings.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform() < p; }

    // Index sampled in proportion to probs (assumed normalized; a trailing
    // numerical deficit goes to the last index).
    int categorical(std::span<const double> probs) {
        if (probs.empty()) throw RuntimeError("categorical: empty distribution");
        double u = uniform();
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < probs.size(); ++i) {
            acc += probs[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(probs.size()) - 1;
    }

  private:
    std::mt19937_64 engine_;
};

// Fixed tags for the per-run sub-streams.
namespace stream_tag {
inline constexpr std::uint64_t kEnv = 0xE57;
inline constexpr std::uint64_t kAgent = 0xA67;
inline constexpr std::uint64_t kAnalysis = 0x4A1;
}  // namespace stream_tag

}  // namespace valprof
