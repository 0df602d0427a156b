#ifndef HGPO_RANDOM_HPP_
#define HGPO_RANDOM_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace hgpo {

// splitmix64 finalizer; decorrelates nearby seed values
std::uint64_t mix64(std::uint64_t x);

// Derives the seed of a named substream from a root seed. Same arguments
// always yield the same seed, and distinct names/indices yield independent
// streams, so components can be re-seeded without cross-contamination.
std::uint64_t substream_seed(std::uint64_t root, std::string_view name,
                             std::uint64_t a = 0, std::uint64_t b = 0,
                             std::uint64_t c = 0);

// Seeded generator with hand-rolled distributions. std:: distribution
// objects are implementation-defined; these are not, so identical seeds
// give identical draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform in [0, 1), 53-bit resolution
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // inclusive, unbiased via rejection
  int uniform_int(int lo, int hi);

  // standard normal, Box-Muller
  double gaussian();
  double gaussian(double mean, double stddev) {
    return mean + stddev * gaussian();
  }

  // index draw by inverse CDF; probs must be non-negative
  int categorical(std::span<const double> probs);

 private:
  std::mt19937_64 engine_;
  double cached_gaussian_ = 0.0;
  bool has_cached_gaussian_ = false;
};

}  // namespace hgpo

#endif  // HGPO_RANDOM_HPP_
