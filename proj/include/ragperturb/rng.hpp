#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rp {

// 64-bit FNV-1a over raw bytes.
constexpr uint64_t fnv1a64(std::string_view bytes) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// splitmix64 output function: stateless mixing of a counter or seed.
constexpr uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Child seed for a named stage. All randomness in an experiment flows from
// one master seed through this split, so changing one sweep axis changes
// exactly one stage's stream.
constexpr uint64_t child_seed(uint64_t master, std::string_view stage) {
  return mix64(master ^ fnv1a64(stage));
}

// mt19937_64 with hand-rolled distributions. The standard engine is
// bit-exact everywhere; std::uniform_*_distribution is not, so we never
// use those.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next_u64() { return eng_(); }

  // Uniform in [0, n). Modulo composition; bias is negligible for the
  // desk-scale ranges used here and the results stay portable.
  uint64_t below(uint64_t n) { return eng_() % n; }

  // Uniform double in [0, 1).
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace rp
