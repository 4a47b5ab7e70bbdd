#ifndef EVIDENT_RNG_HPP
#define EVIDENT_RNG_HPP

#include <cstdint>

#include "evident/core.hpp"

namespace evident {

/// Deterministic counter-style random stream (SplitMix64). A stream is
/// identified by (master_seed, stream_index); derivation hashes both so that
/// replication i draws the same sequence no matter which worker runs it, on
/// any platform. No standard-library distributions are used anywhere: their
/// output is implementation-defined and would break cross-platform
/// reproducibility.
class RngStream {
public:
    /// Stream from a raw state (e.g. a SamplePath's recorded seed).
    explicit RngStream(std::uint64_t raw_state) : state_(raw_state) {}

    RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
        : state_(derive(master_seed, stream_index)) {}

    static std::uint64_t derive(std::uint64_t master_seed, std::uint64_t stream_index) {
        return mix(master_seed ^ mix(stream_index + 0x9e3779b97f4a7c15ULL));
    }

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix_output(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    std::uint64_t state() const { return state_; }

private:
    static std::uint64_t mix_output(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    static std::uint64_t mix(std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        return mix_output(z);
    }

    std::uint64_t state_;
};

/// Draw one symbol by CDF inversion in fixed symbol order.
inline int sample_symbol(RngStream& rng, const Distribution& dist) {
    const double u = rng.next_unit();
    double cum = 0.0;
    const int n = dist.size();
    for (int x = 0; x < n - 1; ++x) {
        cum += dist[x];
        if (u < cum) return x;
    }
    return n - 1;
}

}  // namespace evident

#endif  // EVIDENT_RNG_HPP
