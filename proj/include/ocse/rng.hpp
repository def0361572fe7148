#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

namespace ocse {

/// Stateless 64-bit finalizer (splitmix64 output function).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Order-sensitive accumulator used to derive independent sub-seeds from a
/// master seed plus context values (node ids, set members, replica index).
class SeedStream {
 public:
  explicit SeedStream(std::uint64_t master) : state_(mix64(master)) {}

  SeedStream& absorb(std::uint64_t v) {
    state_ = mix64(state_ ^ mix64(v));
    return *this;
  }

  template <typename It>
  SeedStream& absorb_range(It first, It last) {
    for (; first != last; ++first) absorb(static_cast<std::uint64_t>(*first));
    return *this;
  }

  std::uint64_t finish() const { return mix64(state_); }

 private:
  std::uint64_t state_;
};

inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> parts) {
  SeedStream s(master);
  for (auto v : parts) s.absorb(v);
  return s.finish();
}

/// Deterministic generator with explicit uniform/normal draws. The normal
/// draw is Box-Muller on top of raw 53-bit uniforms so that output depends
/// only on the seed, not on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open01() {
    return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller (two uniforms per draw, no cached spare).
  double normal() {
    const double u1 = uniform_open01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * 3.141592653589793238462643383279502884 * u2);
  }

  /// Uniform integer in [0, n), n > 0.
  int bounded(int n) {
    return static_cast<int>((static_cast<unsigned __int128>(gen_()) *
                             static_cast<unsigned __int128>(n)) >>
                            64);
  }

  /// Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (int i = static_cast<int>(v.size()) - 1; i > 0; --i) {
      const int j = bounded(i + 1);
      std::swap(v[i], v[static_cast<std::size_t>(j)]);
    }
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace ocse
