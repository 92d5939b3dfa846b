#ifndef SPARSECUT_RNG_HPP
#define SPARSECUT_RNG_HPP

#include <cstdint>
#include <random>

namespace sparsecut {

// Counter-based seed splitter; derived streams for trial i use
// split_seed(seed, i) so there is no shared mutable RNG anywhere.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t split_seed(uint64_t seed, uint64_t stream) {
    return splitmix64(seed ^ splitmix64(stream + 1));
}

class Rng {
public:
    explicit Rng(uint64_t seed) : eng_(splitmix64(seed)) {}

    // Uniform integer in [0, n).
    uint64_t below(uint64_t n) {
        return std::uniform_int_distribution<uint64_t>(0, n - 1)(eng_);
    }

    // Uniform double in [0, 1).
    double unit() {
        return std::uniform_real_distribution<double>(0.0, 1.0)(eng_);
    }

    bool chance(double p) { return unit() < p; }

private:
    std::mt19937_64 eng_;
};

} // namespace sparsecut

#endif
