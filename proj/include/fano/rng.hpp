#ifndef FANO_RNG_HPP
#define FANO_RNG_HPP

#include <cstdint>
#include <random>

namespace fano {

// All sampling in the toolkit flows through one of these, seeded explicitly,
// so that a (config, seed) pair reproduces a run bit for bit.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t u64() { return eng_(); }

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) {
        std::uniform_int_distribution<std::uint64_t> d(0, n - 1);
        return d(eng_);
    }

    // Deterministic child seed for parallel partitions.
    std::uint64_t child_seed(std::uint64_t index) const {
        return splitmix(seed_base_ ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    }

    static std::uint64_t splitmix(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

  private:
    std::mt19937_64 eng_;
    std::uint64_t seed_base_ = 0;
};

}  // namespace fano

#endif
