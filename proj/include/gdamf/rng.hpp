#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gdamf {

// Derive an independent stream seed from a base seed. splitmix64 finalizer;
// the same (seed, stream) pair always yields the same value, on any platform.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Seeded RNG with self-contained distributions. std::*_distribution output is
// implementation-defined, which would break cross-platform reproducibility of
// run records, so the few draws we need are implemented here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // uniform in [0, 1), 53-bit resolution
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // standard normal, Box-Muller
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform();  // (0, 1]
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mean, double sd) { return mean + sd * normal(); }

    // uniform integer in [0, n), unbiased (rejection sampling)
    std::uint64_t uniform_index(std::uint64_t n);

    // Fisher-Yates
    template <class T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_index(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // k distinct indices from [0, n), in draw order
    std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace gdamf
