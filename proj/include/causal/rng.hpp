#ifndef CAUSAL_RNG_HPP
#define CAUSAL_RNG_HPP

#include <cstdint>
#include <optional>
#include <random>

namespace causal {

// Deterministic generator used for all synthetic data: mt19937_64 for the
// uniform stream, trigonometric Box-Muller for normals (explicit so output is
// identical across standard libraries). Streams for replications are split
// from a master seed with splitmix64.
class Rng {
public:
    static constexpr const char* kAlgorithm = "mt19937_64+box-muller";
    static constexpr int kAlgorithmVersion = 1;

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // [0, 1)
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double normal() {
        if (spare_) {
            const double value = *spare_;
            spare_.reset();
            return value;
        }
        // u1 in (0, 1] so the log is finite
        const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
        const double u2 = uniform01();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * 3.14159265358979323846 * u2;
        spare_ = radius * std::sin(angle);
        return radius * std::cos(angle);
    }

    int bernoulli_bit() { return static_cast<int>(next_u64() >> 63); }

    // index in [0, bound)
    std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

    static std::uint64_t mix(std::uint64_t master, std::uint64_t stream) {
        std::uint64_t z = master + 0x9e3779b97f4a7c15ull * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

}  // namespace causal

#endif  // CAUSAL_RNG_HPP
