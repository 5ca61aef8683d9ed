#include "rcsp/rng.hpp"

#include <cmath>

namespace rcsp {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64_alt(std::uint64_t z) {
  // Moremur finalizer; distinct constants from mix64 so the two rounds do
  // not cancel.
  z ^= z >> 27;
  z *= 0x3c79ac492ba7b653ULL;
  z ^= z >> 33;
  z *= 0x1c69b3f74ac4ae35ULL;
  z ^= z >> 27;
  return z;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

std::uint64_t hash_words(std::initializer_list<std::uint64_t> words) {
  std::uint64_t h = 0x243f6a8885a308d3ULL;
  for (std::uint64_t w : words) h = mix64(h ^ mix64(w + kGolden));
  return h;
}

Rng::Rng(RngSeed seed) : Rng(hash_words({seed.base, seed.stream}), 0) {}

Rng::result_type Rng::operator()() {
  const std::uint64_t c = counter_++;
  return mix64_alt(mix64(key_ + c * kGolden) ^ key2_);
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Lemire's multiply-shift with rejection: exact and division-light.
  std::uint64_t x = (*this)();
  unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (low < threshold) {
      x = (*this)();
      m = static_cast<unsigned __int128>(x) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

double Rng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double Rng::open_uniform() {
  return (static_cast<double>((*this)() >> 12) + 0.5) * 0x1.0p-52;
}

std::uint32_t Rng::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  // A sum of independent Poisson variables is Poisson, so large means are
  // split into chunks small enough for Knuth's product method.
  constexpr double kChunk = 30.0;
  std::uint32_t total = 0;
  while (mean > kChunk) {
    total += poisson(kChunk);
    mean -= kChunk;
  }
  const double limit = std::exp(-mean);
  double prod = uniform();
  while (prod > limit) {
    ++total;
    prod *= uniform();
  }
  return total;
}

Rng Rng::split(std::uint64_t id) const { return Rng(hash_words({key_, id, 0x9a11ULL}), 0); }

}  // namespace rcsp
