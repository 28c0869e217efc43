#ifndef GLPN_RNG_HPP
#define GLPN_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace glpn {

/// Deterministic, portable random source.
///
/// The raw stream is std::mt19937_64, whose output sequence is pinned by the
/// C++ standard, so identical seeds give identical streams on every platform.
/// The floating-point transforms below are implemented by hand because the
/// standard library distributions are not bit-reproducible across vendors.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform double in (0, 1): top 53 bits plus a half-ulp offset.
    double uniform01() {
        return (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n) via 128-bit multiply (no modulo bias worth
    /// caring about at these ranges, and fully deterministic).
    std::uint64_t below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(gen_()) * n) >> 64);
    }

    /// Standard normal via Box-Muller; consumes exactly two draws.
    double normal() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    /// Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

private:
    std::mt19937_64 gen_;
};

/// splitmix64 finalizer, used to derive independent substreams.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// FNV-1a over a descriptor string.
inline std::uint64_t hash_tag(std::string_view tag) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Substream seed for (seed, descriptor); used by verifier trials and
/// experiment grid cells so parallel cells never share a stream.
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
    return mix64(seed ^ hash_tag(tag));
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index));
}

}  // namespace glpn

#endif  // GLPN_RNG_HPP
