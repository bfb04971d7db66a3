#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace pcvir {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random stream. Every transform here is fully pinned
// (mt19937_64 is specified bit-for-bit by the standard, and the uniform and
// normal draws below avoid std::*_distribution, whose output may differ
// between standard library implementations), so a seed reproduces the same
// values on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Independent substream: (seed, stream_id) hashed into a fresh engine seed.
    static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
        std::uint64_t s = seed + 0x9e3779b97f4a7c15ULL * (stream_id + 1);
        return Rng(splitmix64(s));
    }

    // Uniform on (0, 1), excluding both endpoints.
    double uniform01() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Standard normal by inverse-CDF transform.
    double normal();

    std::vector<double> normals(std::size_t n);

    // Uniform integer in [0, n), unbiased via rejection.
    std::uint64_t below(std::uint64_t n) {
        constexpr std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        std::uint64_t limit = max - max % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    // Fisher-Yates shuffle.
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace pcvir
