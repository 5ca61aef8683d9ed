#pragma once

#include <cstdint>
#include <initializer_list>

namespace rcsp {

/// Seed of a random stream: `base` selects the experiment, `stream` an
/// independent sub-stream (one per job, restart, worker...).
struct RngSeed {
  std::uint64_t base = 0;
  std::uint64_t stream = 0;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

std::uint64_t mix64(std::uint64_t x);

/// Order-sensitive hash of a list of words. Used to derive job seeds.
std::uint64_t hash_words(std::initializer_list<std::uint64_t> words);

/// Counter-based 64-bit generator.
///
/// Output number `c` is a keyed two-round mix of `c`, so the whole stream
/// is a pure function of (base, stream, c). Everything derived from it
/// (bounded integers, reals, Poisson draws) uses integer arithmetic or
/// plain IEEE operations only, never the implementation-defined
/// <random> distributions, so streams are bit-identical across platforms.
class Rng {
 public:
  using result_type = std::uint64_t;

  Rng() : Rng(RngSeed{}) {}
  explicit Rng(RngSeed seed);
  Rng(std::uint64_t base, std::uint64_t stream) : Rng(RngSeed{base, stream}) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }

  result_type operator()();

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform double in (0, 1).
  double open_uniform();
  bool coin() { return ((*this)() >> 63) != 0; }
  /// Uniform Ising spin, +1 or -1.
  int spin() { return coin() ? 1 : -1; }
  std::uint32_t poisson(double mean);

  /// Child generator whose stream is keyed by this generator's key and `id`.
  Rng split(std::uint64_t id) const;

  std::uint64_t counter() const { return counter_; }

 private:
  Rng(std::uint64_t key, int) : key_(key), key2_(mix64(key ^ 0x5851f42d4c957f2dULL)) {}

  std::uint64_t key_ = 0;
  std::uint64_t key2_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace rcsp
