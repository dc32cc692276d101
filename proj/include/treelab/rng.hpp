#ifndef TREELAB_RNG_HPP
#define TREELAB_RNG_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace treelab {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// xoshiro256** seeded through splitmix64.  Used everywhere instead of the
// standard distributions so that results are bit-identical across platforms
// and standard-library versions.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : state_) word = splitmix64(sm);
    }

    // Substream derivation: mixing the master seed with a stream index gives
    // statistically independent chunks whose draws do not depend on how many
    // threads consume them.
    static Rng substream(std::uint64_t master_seed, std::uint64_t stream) {
        std::uint64_t sm = master_seed;
        std::uint64_t a = splitmix64(sm);
        sm = stream ^ 0x6a09e667f3bcc909ULL;
        std::uint64_t b = splitmix64(sm);
        return Rng(a ^ (b * 0x2545f4914f6cdd1dULL));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, bound) without modulo bias.
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("Rng::next_below: bound must be positive");
        const std::uint64_t threshold = -bound % bound;
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    // Uniform double in the open interval (0,1): 53-bit mantissa offset by half an ulp.
    double next_double() {
        return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Poisson sampling: inversion for small means, recursive halving above.
    std::uint64_t next_poisson(double mean) {
        if (mean < 0) throw std::invalid_argument("Rng::next_poisson: negative mean");
        if (mean == 0) return 0;
        if (mean < 10.0) {
            double p = std::exp(-mean);
            double cumulative = p;
            std::uint64_t k = 0;
            const double u = next_double();
            while (u > cumulative && k < 2000) {
                ++k;
                p *= mean / static_cast<double>(k);
                cumulative += p;
            }
            return k;
        }
        // Poisson(m) = Poisson(m/2) + Poisson(m/2)
        return next_poisson(mean / 2) + next_poisson(mean / 2);
    }

    // Binomial(n, p) by pmf inversion; intended for small n*p (the walk stays short).
    std::uint64_t next_binomial(std::uint64_t n, double p) {
        if (n == 0 || p <= 0.0) return 0;
        if (p >= 1.0) return n;
        const double log_q = std::log1p(-p);
        double pmf = std::exp(static_cast<double>(n) * log_q);
        double cumulative = pmf;
        std::uint64_t k = 0;
        const double u = next_double();
        const double ratio = p / (1.0 - p);
        while (u > cumulative && k < n) {
            pmf *= ratio * static_cast<double>(n - k) / static_cast<double>(k + 1);
            ++k;
            cumulative += pmf;
            if (pmf < 1e-300 && cumulative < u) break;  // vanished tail, accept current k
        }
        return k;
    }

  private:
    static std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    std::uint64_t state_[4];
};

}  // namespace treelab

#endif
