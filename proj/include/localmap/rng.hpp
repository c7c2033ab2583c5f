#ifndef LOCALMAP_RNG_HPP
#define LOCALMAP_RNG_HPP

#include <cmath>
#include <cstdint>

namespace localmap {

// Counter-based random streams. The i-th draw of a stream is a pure function
// of (seed, stream, i), so any position in any stream can be regenerated
// independently of thread scheduling or call order. Streams are identified by
// 64-bit keys built with stream_key(); every sampler in the library owns its
// stream, keyed by purpose plus whatever indices (anchor, slot, iteration)
// make the draw site unique.
//
// The generator is splitmix64 with the initial state derived from
// (seed, stream); it uses only integer arithmetic and is reproducible across
// platforms.

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

// Folds up to four values into one stream id.
constexpr std::uint64_t stream_key(std::uint64_t purpose, std::uint64_t a = 0,
                                   std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = mix64(purpose + kGolden);
    h = mix64(h ^ (a + kGolden));
    h = mix64(h ^ (b + kGolden));
    h = mix64(h ^ (c + kGolden));
    return h;
}

namespace stream {
inline constexpr std::uint64_t kEmbeddingInit = 1;
inline constexpr std::uint64_t kMnSampling = 2;
inline constexpr std::uint64_t kFpSampling = 3;
inline constexpr std::uint64_t kFpResample = 4;
inline constexpr std::uint64_t kBlobCenters = 5;
inline constexpr std::uint64_t kBlobPoints = 6;
inline constexpr std::uint64_t kBlobBridges = 7;
inline constexpr std::uint64_t kPosthocSplit = 8;
inline constexpr std::uint64_t kSimulationNn = 9;
inline constexpr std::uint64_t kSimulationFp = 10;
inline constexpr std::uint64_t kSubspaceInit = 11;
}  // namespace stream

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(mix64(mix64(seed + kGolden) ^ stream)) {}

    std::uint64_t next_u64() {
        counter_ += kGolden;
        return mix64(key_ + counter_);
    }

    // Uniform in [0, 1) with 53 bits of precision.
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in {0, ..., bound-1} via 128-bit multiply-shift.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
    }

    // Standard normal via Box-Muller; consumes two uniforms per call.
    double next_gaussian() {
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace localmap

#endif  // LOCALMAP_RNG_HPP
