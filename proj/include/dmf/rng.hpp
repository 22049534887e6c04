#ifndef DMF_RNG_HPP
#define DMF_RNG_HPP

#include <cstdint>
#include <random>

namespace dmf {

/// Seeded randomness stream. Streams are single-owner; derive independent
/// substreams with split() (e.g. one per experiment trial) so results do not
/// depend on evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix(seed)) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return gen_(); }

  /// Uniform in [0, bound), bound >= 1. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = gen_();
    } while (r >= limit);
    return r % bound;
  }

  bool coin() { return (gen_() & 1u) != 0; }

  /// Independent stream derived from this stream's seed and an index.
  Rng split(std::uint64_t stream) const {
    return Rng(mix(seed_ + 0x9e3779b97f4a7c15ULL * (stream + 1)));
  }

 private:
  // splitmix64 finalizer
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 gen_;
};

}  // namespace dmf

#endif
