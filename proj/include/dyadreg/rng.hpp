#ifndef DYADREG_RNG_HPP
#define DYADREG_RNG_HPP

#include <cstdint>
#include <limits>

namespace dyadreg {

// SplitMix64 (Steele, Lea & Flood 2014; the engine behind Java's
// SplittableRandom).  Each Monte Carlo replication owns one stream whose
// initial state is a hash of (master_seed, rep_index), so replications can
// run in any order on any number of threads without changing their draws.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Stream seed for one replication: two finalizer rounds over the combined
// (master_seed, rep_index) pair.
inline std::uint64_t replication_seed(std::uint64_t master_seed,
                                      std::uint64_t rep_index) {
  SplitMix64 h(master_seed ^ (0xD1B54A32D192ED03ULL * (rep_index + 1)));
  h();
  return h();
}

}  // namespace dyadreg

#endif  // DYADREG_RNG_HPP
