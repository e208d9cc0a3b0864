#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace rwadic {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random stream.  Streams derived from (seed, index) are
// independent and reproducible regardless of thread scheduling; all
// distributions are generated by explicit bit manipulation so results do
// not depend on the standard library's <random> distribution internals.
class RandomStream {
public:
    RandomStream() : RandomStream(0, 0) {}

    RandomStream(std::uint64_t seed, std::uint64_t stream_index) {
        std::uint64_t s = seed ^ (0xd1b54a32d192ed03ULL * (stream_index + 1));
        std::seed_seq seq{static_cast<unsigned>(splitmix64(s)),
                          static_cast<unsigned>(splitmix64(s) >> 32),
                          static_cast<unsigned>(splitmix64(s)),
                          static_cast<unsigned>(splitmix64(s) >> 32)};
        engine_.seed(seq);
        have_spare_ = false;
        spare_ = 0.0;
    }

    std::uint64_t next_u64() { return engine_(); }

    // uniform in [0, 1)
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform integer in [0, n)
    std::uint64_t next_below(std::uint64_t n) {
        std::uint64_t threshold = (0 - n) % n;
        for (;;) {
            std::uint64_t r = next_u64();
            if (r >= threshold) return r % n;
        }
    }

    // standard normal via Box-Muller
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1, u2;
        do {
            u1 = next_double();
        } while (u1 <= 0.0);
        u2 = next_double();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

private:
    std::mt19937_64 engine_;
    bool have_spare_;
    double spare_;
};

}  // namespace rwadic
