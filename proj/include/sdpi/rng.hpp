#ifndef SDPI_RNG_HPP
#define SDPI_RNG_HPP

#include <cstdint>
#include <cmath>
#include <vector>

namespace sdpi {

// Deterministic, platform-independent pseudo-random generator (xoshiro256**
// seeded through splitmix64). Search routines derive one generator per
// restart index so results are reproducible regardless of evaluation order.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t x = seed;
    for (auto& word : state_) word = splitmix64(x);
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

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

  // Flat Dirichlet sample of the given length (normalized exponentials).
  std::vector<double> dirichlet(std::size_t n) {
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& v : w) {
      double u = uniform();
      while (u <= 0.0) u = uniform();
      v = -std::log(u);
      total += v;
    }
    for (auto& v : w) v /= total;
    return w;
  }

  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Stable derived seed for sub-streams (restart index, suite index, ...).
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    return splitmix64(x);
  }

 private:
  static std::uint64_t rotl(std::uint64_t v, int k) {
    return (v << k) | (v >> (64 - k));
  }

  std::uint64_t state_[4];
};

}  // namespace sdpi

#endif  // SDPI_RNG_HPP
